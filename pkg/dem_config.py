"""demlab Configuration Loader

Handles configuration from YAML files and command-line arguments.
CLI arguments always override config file settings.
"""

import argparse
import os
import sys
from pathlib import Path
from typing import Any

import yaml


EXIT_USAGE = 2


# --- Configuration file locations ---

def _get_platform_config_dir() -> Path:
    """Return the platform-appropriate user config directory."""
    if sys.platform == "win32":
        # Windows: use APPDATA (roaming) or LOCALAPPDATA
        appdata = os.environ.get("APPDATA")
        if appdata:
            return Path(appdata) / "demlab"
        localappdata = os.environ.get("LOCALAPPDATA")
        if localappdata:
            return Path(localappdata) / "demlab"
        return Path.home() / "demlab"
    # Linux/macOS: use XDG_CONFIG_HOME or ~/.config
    xdg_config = os.environ.get("XDG_CONFIG_HOME")
    if xdg_config:
        return Path(xdg_config) / "demlab"
    return Path.home() / ".config" / "demlab"


def get_default_config_paths() -> list[Path]:
    """Return list of config file paths to search, in priority order."""
    return [
        Path.cwd() / "demlab_config.yaml",
        _get_platform_config_dir() / "config.yaml",
        Path.home() / ".demlab.yaml",
    ]


def get_user_config_path() -> Path:
    """Return the path where user config should be saved."""
    return _get_platform_config_dir() / "config.yaml"


def find_config_file() -> Path | None:
    """Find the first existing config file from default paths."""
    for path in get_default_config_paths():
        if path.exists():
            return path
    return None


# --- Config node wrapper ---

class ConfigNode:
    """
    Lightweight wrapper that allows attribute-style access to dictionaries.
    Example:
        config.engine.max_truncation
    """
    def __init__(self, data):
        self._data = data

    def __getattr__(self, key: str) -> Any:
        if isinstance(self._data, dict) and key in self._data:
            value = self._data[key]
            return ConfigNode(value) if isinstance(value, dict) else value
        raise AttributeError(f"No such config key: {key}")

    def get(self, *keys, default=None):
        """
        Optional nested getter: config.get("engine", "truncation")
        """
        current = self._data
        for key in keys:
            if isinstance(current, dict) and key in current:
                current = current[key]
            else:
                return default
        return current

    def to_dict(self) -> dict:
        """Return the underlying dictionary."""
        return self._data


# --- Default configuration ---

DEFAULT_CONFIG = {
    "run": {
        "rank": 2,
        "format": "json",
        "jobs": 1,
        "seed": 0,
        "shift": 0,
        "max_exponent_span": None,
    },
    "engine": {
        "truncation": None,      # None: start at the default and grow until stable
        "bound": None,           # None: height of mu - w_0 mu
        "stability_check": True,
        "max_truncation": 24,
    },
    "characters": {
        "tie_break": "smallest",
    },
    "verify": {
        "max_rank": None,        # None: each suite's own range
        "max_coordinate_sum": None,
    },
    "logging": {
        "level": "WARNING",
        "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
    },
}


def deep_merge(base: dict, overlay: dict) -> dict:
    """Deep merge overlay into base, returning a new dict."""
    result = base.copy()
    for key, value in overlay.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value
    return result


def _weight_arg(text: str) -> list[int]:
    """Parse "1,0,2" into [1, 0, 2]."""
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Invalid weight: {text!r}") from exc


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"Expected a positive integer, got {text}")
    return value


# --- Main config class ---

class DemlabConfig:
    """Class to load and manage demlab configuration."""

    def __init__(self, description: str = "Demazure module laboratory", argv: list[str] | None = None):
        self.args = self._parse_args(description, argv)
        self.config_path = None
        self._raw_config = {}
        self._merged_config = {}

        self._load_config()
        self._merged_config = self._merge_with_args(self._raw_config)

        if getattr(self.args, "save", False):
            self._save_config()

        self.config = ConfigNode(self._raw_config)
        self.merged_config = ConfigNode(self._merged_config)

    @property
    def command(self) -> str | None:
        return getattr(self.args, "command", None)

    def _parse_args(self, description: str, argv: list[str] | None) -> argparse.Namespace:
        """Parse command-line arguments."""
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "--config", "-c", type=str, metavar="FILE",
            help="Path to YAML config file"
        )
        common.add_argument(
            "--save", "-s", action="store_true",
            help="Save current settings to user config file"
        )
        common.add_argument(
            "--rank", "-n", type=_positive_int, metavar="N",
            help="Rank n of sl_{n+1}"
        )
        common.add_argument(
            "--trunc", type=_positive_int, metavar="N",
            help="Truncation order of the current algebra (default: automatic)"
        )
        common.add_argument(
            "--bound", type=int, metavar="H",
            help="Largest weight height computed below the highest weight"
        )
        common.add_argument(
            "--format", choices=["json", "csv"],
            help="Output format"
        )
        common.add_argument(
            "--jobs", "-j", type=_positive_int, metavar="N",
            help="Worker processes for verification sweeps"
        )
        common.add_argument(
            "--seed", type=int, metavar="S",
            help="Seed for randomized property suites"
        )
        common.add_argument(
            "--verbose", "-v", action="store_true",
            help="Log progress at DEBUG level"
        )

        parser = argparse.ArgumentParser(
            description=description,
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  %(prog)s enumerate-p1 --rank 3
  %(prog)s enumerate-p1 --rank 2 --shift 5 --format csv
  %(prog)s verify socle --rank 6
  %(prog)s verify presentation-m --rank 2 --max-sum 4 --jobs 4
  %(prog)s character demazure --level 2 --weight 2,0
  %(prog)s character weyl --weight 1,1
  %(prog)s verify --list
"""
        )
        sub = parser.add_subparsers(dest="command", metavar="COMMAND")

        enum_p = sub.add_parser("enumerate-p1", parents=[common],
                                help="List the chains in P^+_Z(1) up to exponent shift")
        enum_p.add_argument("--shift", type=int, metavar="K",
                            help="Exponent given to the first factor")
        enum_p.add_argument("--max-span", type=int, metavar="S", dest="max_span",
                            help="Only chains whose exponents span at most S")

        verify_p = sub.add_parser("verify", parents=[common], help="Run a verification suite")
        verify_p.add_argument("name", nargs="?", metavar="NAME", help="Suite identifier")
        verify_p.add_argument("--list", action="store_true", dest="list_suites",
                              help="List the suite identifiers with their aliases and exit")
        verify_p.add_argument("--max-sum", type=int, metavar="S", dest="max_sum",
                              help="Cap on the coordinate sum of the weights swept")

        char_p = sub.add_parser("character", parents=[common], help="Print a character")
        char_p.add_argument("kind", choices=["demazure", "weyl"])
        char_p.add_argument("--level", "-l", type=_positive_int, metavar="L",
                            help="Level of the Demazure module")
        char_p.add_argument("--weight", "-w", type=_weight_arg, metavar="C1,...,Cn",
                            help="Highest weight in fundamental-weight coordinates")

        args = parser.parse_args(argv)
        self._parser = parser
        return args

    def print_help(self, file=None) -> None:
        self._parser.print_help(file=file)

    def _load_config(self) -> None:
        """Load configuration from file."""
        self._raw_config = deep_merge({}, DEFAULT_CONFIG)

        if getattr(self.args, "config", None):
            self.config_path = Path(self.args.config)
            if not self.config_path.exists():
                print(f"Config file not found: {self.config_path}", file=sys.stderr)
                sys.exit(EXIT_USAGE)
        else:
            self.config_path = find_config_file()

        if self.config_path and self.config_path.exists():
            with open(self.config_path, "r", encoding="utf-8") as f:
                file_config = yaml.safe_load(f) or {}
            self._raw_config = deep_merge(self._raw_config, file_config)

    def _merge_with_args(self, config: dict) -> dict:
        """Merge command-line arguments over config file settings."""
        merged = deep_merge({}, config)

        cli_mappings = {
            "rank": ["run", "rank"],
            "format": ["run", "format"],
            "jobs": ["run", "jobs"],
            "seed": ["run", "seed"],
            "shift": ["run", "shift"],
            "max_span": ["run", "max_exponent_span"],
            "trunc": ["engine", "truncation"],
            "bound": ["engine", "bound"],
            "max_sum": ["verify", "max_coordinate_sum"],
        }
        for arg_name, path in cli_mappings.items():
            value = getattr(self.args, arg_name, None)
            if value is not None:
                self._set_nested(merged, path, value)

        # an explicit rank also caps verification sweeps
        if getattr(self.args, "rank", None) is not None and self.command == "verify":
            self._set_nested(merged, ["verify", "max_rank"], self.args.rank)

        if getattr(self.args, "verbose", False):
            self._set_nested(merged, ["logging", "level"], "DEBUG")

        return merged

    def _set_nested(self, d: dict, path: list[str], value: Any) -> None:
        """Set a nested dictionary value by path."""
        for key in path[:-1]:
            if key not in d:
                d[key] = {}
            d = d[key]
        d[path[-1]] = value

    def _save_config(self) -> None:
        """Save merged configuration to user config file."""
        save_path = get_user_config_path()
        save_path.parent.mkdir(parents=True, exist_ok=True)
        with open(save_path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self._merged_config, f, default_flow_style=False, sort_keys=False)
        print(f"Configuration saved to: {save_path}", file=sys.stderr)

    def get_key(self, *keys, default=None, merged: bool = True) -> Any:
        """
        Nested key getter.
        Example:
            self.get_key("engine", "max_truncation", default=24)
        """
        node = self.merged_config if merged else self.config
        return node.get(*keys, default=default)
