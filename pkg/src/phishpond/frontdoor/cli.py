"""The phishpond command line.

Exit codes: 0 success, 1 validation findings or analysis failure,
2 usage errors. The data directory may come from --data or the
PHISHPOND_DATA environment variable.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import click

from ..analyzer import EmailMessage, MalformedUrl, analyze_email, analyze_url, tip_for
from ..corpus import Corpus, Mode, load_corpus, validate_corpus
from ..settings import Settings, load_settings
from .bots import POLICIES, simulate
from .protocol import Frontdoor


def _load(config: str | None, corpus_path: str | None) -> tuple[Settings, Corpus]:
    settings = load_settings(config)
    if corpus_path is None:
        corpus_file = Path(str(resources.files("phishpond").joinpath("data", "corpus.json")))
    else:
        corpus_file = Path(corpus_path)
    corpus = load_corpus(corpus_file.read_bytes())
    return settings, corpus


def _print_verdict(payload_desc: dict, verdict, settings: Settings) -> None:
    tip = tip_for(verdict.cues)
    click.echo(
        json.dumps(
            {
                **payload_desc,
                "cues": [
                    {"kind": c.kind.value, "weight": c.weight, "evidence": c.evidence}
                    for c in verdict.cues
                ],
                "risk_score": verdict.risk_score,
                "label": verdict.label.value,
                "tip": tip.text,
            },
            indent=2,
        )
    )


@click.group()
def cli() -> None:
    """Anti-phishing pond: lint URLs and emails, validate content, play."""


@cli.command("lint-url")
@click.argument("url")
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None)
def lint_url(url: str, config: str | None) -> None:
    """Analyze one URL and print its cues and verdict."""
    settings = load_settings(config)
    try:
        verdict = analyze_url(url, settings.lexicon, settings.cues)
    except MalformedUrl as exc:
        click.echo(f"malformed url: {exc}", err=True)
        sys.exit(1)
    _print_verdict({"url": url}, verdict, settings)


@cli.command("lint-email")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None)
def lint_email(file: str, config: str | None) -> None:
    """Analyze an email record (JSON file) and print cues and verdict."""
    settings = load_settings(config)
    try:
        message = EmailMessage.from_dict(json.loads(Path(file).read_text(encoding="utf-8")))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        click.echo(f"bad email file: {exc}", err=True)
        sys.exit(1)
    verdict = analyze_email(message, settings.lexicon, settings.cues)
    _print_verdict({"file": file}, verdict, settings)


@cli.group("corpus")
def corpus_group() -> None:
    """Corpus tools."""


@corpus_group.command("validate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None)
def corpus_validate(file: str, config: str | None) -> None:
    """Lint a corpus file; exits 1 when findings exist."""
    settings = load_settings(config)
    corpus = load_corpus(Path(file).read_bytes())
    report = validate_corpus(corpus, settings.lexicon, settings.cues)
    click.echo(json.dumps(report.to_dict(), indent=2))
    if not report.ok:
        sys.exit(1)


@cli.command("simulate")
@click.option("--players", default=1, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--policy", default="perfect", show_default=True, type=click.Choice(sorted(POLICIES)))
@click.option("--mode", default="url", show_default=True, type=click.Choice(["url", "email"]))
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False), default=None)
def simulate_cmd(players: int, seed: int, policy: str, mode: str, config: str | None, corpus_path: str | None) -> None:
    """Run headless bot sessions and print a deterministic report."""
    settings, corpus = _load(config, corpus_path)
    report = simulate(players, seed, policy, Mode(mode), settings, corpus)
    click.echo(json.dumps(report, indent=2, sort_keys=True))


@cli.command("play")
@click.option("--headless", is_flag=True, default=False, help="Scripted play, no UI.")
@click.option("--script", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--data", type=click.Path(file_okay=False), envvar="PHISHPOND_DATA", default=None)
def play(headless: bool, script: str, config: str | None, corpus_path: str | None, data: str | None) -> None:
    """Drive one session from a script file, printing server messages.

    Script format: {"mode", "seed"?, "player_id"?, "actions": [
    {"action": "eat"|"reject"|"teacher"|"next_level"|"quit", "at"?: seconds}]}
    """
    if not headless:
        click.echo("only --headless play is supported; pass --headless", err=True)
        sys.exit(2)
    settings, corpus = _load(config, corpus_path)
    plan = json.loads(Path(script).read_text(encoding="utf-8"))
    door = Frontdoor(settings, corpus, data_dir=Path(data) if data else None)
    connection = "cli"
    door.connect(connection)

    def emit(messages: list[dict]) -> bool:
        ended = False
        for message in messages:
            click.echo(json.dumps(message, sort_keys=True))
            if message["type"] == "session_summary":
                ended = True
        return ended

    start: dict = {"v": 1, "type": "start_session", "mode": plan["mode"]}
    if "seed" in plan:
        start["seed"] = plan["seed"]
    if "player_id" in plan:
        start["player_id"] = plan["player_id"]
    emit(door.handle_message(connection, start))

    for step in plan.get("actions", []):
        if "at" in step:
            if emit(door.handle_tick(connection, float(step["at"]))):
                return
        name = step["action"]
        if name in ("next_level", "quit"):
            message = {"v": 1, "type": name}
        else:
            message = {"v": 1, "type": "action", "action": name}
        if emit(door.handle_message(connection, message)):
            return


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--data", type=click.Path(file_okay=False), envvar="PHISHPOND_DATA", default=None)
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--static", type=click.Path(file_okay=False), default=None, help="Directory of built UI assets.")
@click.option("--tick-interval", default=1.0, show_default=True, type=float)
def serve(host: str, port: int, data: str | None, config: str | None, corpus_path: str | None,
          static: str | None, tick_interval: float) -> None:
    """Run the websocket game server."""
    from .server import run_server

    settings, corpus = _load(config, corpus_path)
    door = Frontdoor(settings, corpus, data_dir=Path(data) if data else None)
    run_server(door, host=host, port=port,
               static_dir=Path(static) if static else None, tick_interval=tick_interval)


def main(argv: list[str] | None = None) -> None:
    cli.main(args=argv, prog_name="phishpond")


def run_cli(argv: list[str]) -> int:
    """In-process CLI entry for tests; returns the exit code."""
    try:
        cli.main(args=argv, prog_name="phishpond", standalone_mode=False)
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.UsageError:
        return 2
    except click.ClickException:
        return 1
    return 0
