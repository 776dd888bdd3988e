// Thin websocket wrapper: parse, reduce, notify. A socket factory is
// injected so tests can drive the client with a scripted fake.

import {
  actionMsg,
  nextLevelMsg,
  parseServerMessage,
  quitMsg,
  startSessionMsg,
  type ClientAction,
  type Mode,
} from "./protocol.js";
import {
  actionSent,
  connectionChanged,
  initialState,
  reduce,
  type ViewState,
} from "./state.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export class GameClient {
  state: ViewState = initialState();
  private socket: SocketLike | null = null;

  constructor(
    private url: string,
    private onState: (state: ViewState) => void,
    private factory: SocketFactory,
  ) {}

  connect(): void {
    this.setState(connectionChanged(initialState(), "connecting"));
    let socket: SocketLike;
    try {
      socket = this.factory(this.url);
    } catch {
      this.setState(connectionChanged(this.state, "lost"));
      return;
    }
    this.socket = socket;
    socket.onopen = () => this.setState(connectionChanged(this.state, "open"));
    socket.onmessage = (ev) => {
      const msg = parseServerMessage(ev.data);
      if (msg) this.setState(reduce(this.state, msg));
    };
    socket.onclose = () => {
      if (this.state.screen !== "summary") {
        this.setState(connectionChanged(this.state, "lost"));
      }
    };
    socket.onerror = () => {
      if (this.state.connection !== "open") {
        this.setState(connectionChanged(this.state, "lost"));
      }
    };
  }

  start(mode: Mode, playerId?: string): void {
    this.sendRaw(startSessionMsg(mode, playerId));
  }

  act(action: ClientAction): void {
    this.setState(actionSent(this.state));
    this.sendRaw(actionMsg(action));
  }

  nextLevel(): void {
    this.sendRaw(nextLevelMsg());
  }

  quit(): void {
    this.sendRaw(quitMsg());
  }

  private sendRaw(msg: object): void {
    this.socket?.send(JSON.stringify(msg));
  }

  private setState(state: ViewState): void {
    this.state = state;
    this.onState(state);
  }
}
