import { GameClient, type SocketLike } from "./net.js";
import { render, type Handlers } from "./render.js";

function socketUrl(): string {
  const scheme = location.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${location.host}/play`;
}

function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  const client = new GameClient(
    socketUrl(),
    (state) => render(root, state, handlers),
    (url) => new WebSocket(url) as unknown as SocketLike,
  );

  const handlers: Handlers = {
    pickMode: (mode) => client.start(mode),
    act: (action) => client.act(action),
    nextLevel: () => client.nextLevel(),
    quit: () => client.quit(),
    retry: () => client.connect(),
    playAgain: () => client.connect(),
  };

  client.connect();

  // Smooth countdown between server ticks; the tick message snaps the
  // clock back to the server value, so display drift stays under the
  // push cadence.
  let lastDraw = Date.now();
  setInterval(() => {
    const now = Date.now();
    const dt = (now - lastDraw) / 1000;
    lastDraw = now;
    if (client.state.screen === "playing" && client.state.hud.clock > 0) {
      client.state.hud.clock = Math.max(0, client.state.hud.clock - dt);
      render(root, client.state, handlers);
    }
  }, 250);
}

boot();
