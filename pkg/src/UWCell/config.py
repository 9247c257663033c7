"""Experiment config files merged under command-line flags."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from UWCell.parsers import InputParseError, parse_config_text

logger = logging.getLogger(__name__)


def load_config(path: str | Path) -> dict[str, str]:
    """Read a flat ``key = value`` file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_config_text(text)
    except InputParseError as exc:
        raise InputParseError(f"{path}: {exc}") from None


def _subparsers(parser: argparse.ArgumentParser) -> list[argparse.ArgumentParser]:
    found = []
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            found.extend(action.choices.values())
    return found


def _keys(action: argparse.Action) -> list[str]:
    """Config keys an option answers to: its dest and its long flag names."""
    if not action.option_strings or isinstance(
        action, (argparse._HelpAction, argparse._VersionAction)
    ):
        return []
    names = [opt.lstrip("-").replace("-", "_") for opt in action.option_strings]
    return [action.dest, *(n for n in names if len(n) > 1)]


def _convert(action: argparse.Action, raw: str) -> object:
    if isinstance(action, argparse._CountAction):
        return int(raw)
    if action.nargs == 0:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if action.nargs in ("+", "*"):
        return [_convert_one(action, item) for item in raw.replace(",", " ").split()]
    return _convert_one(action, raw)


def _convert_one(action: argparse.Action, raw: str) -> object:
    value = action.type(raw) if action.type else raw
    if action.choices is not None and value not in action.choices:
        raise InputParseError(
            f"Config value {raw!r} for {action.dest} must be one of {list(action.choices)}"
        )
    return value


def apply_config_defaults(parser: argparse.ArgumentParser, values: dict[str, str]) -> None:
    """Make config values the defaults of every matching option.

    Explicit flags still win because argparse only falls back to defaults.
    """
    used: set[str] = {"config"}
    for p in [parser, *_subparsers(parser)]:
        defaults = {}
        for action in p._actions:
            key = next((k for k in _keys(action) if k in values), None)
            if key is None:
                continue
            try:
                defaults[action.dest] = _convert(action, values[key])
            except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
                raise InputParseError(f"Config value for {key} is invalid: {exc}") from None
            action.required = False
            used.add(key)
        if defaults:
            p.set_defaults(**defaults)
    for key in sorted(set(values) - used):
        logger.warning("Ignoring unknown config key: %s", key)
