# contracts.py
import json, os, sys

from colorama import Fore, Style

import foldsaddle.settings as sts

# formats each api can write, the first one is its default
formats = {
    "classify": ("json",),
    "portrait": ("svg",),
    "scan": ("csv", "json", "svg"),
    "return-map": ("csv",),
    "verify": ("json",),
    "demo-spring": ("json", "svg"),
    "info": ("txt",),
}

requireds = {
    "classify": ("tau", "lam", "beta", "mu"),
    "portrait": ("tau", "lam", "beta", "mu"),
    "scan": ("tau",),
    "return-map": ("lam", "beta", "mu"),
}

defaults = {
    "scan": {
        "resolution": 21,
        "lambda_range": "-0.95:0.95",
        "beta_range": "-0.8:0.8",
        "mu_offset": 0.0,
        "boundary_lane": False,
    },
    "portrait": {"seed_grid": 5},
    "return-map": {"tau": "inv", "resolution": 200},
    "verify": {"counts": False},
    "demo-spring": {"spring": [1.0, 0.5, 1.0, 2.0], "variant": "invisible", "seed_grid": 5},
}

# config file keys that differ from the flag destinations
config_aliases = {"lambda": "lam", "command": "api", "tolerances": "tol_override"}


def checks(*args, **kwargs) -> dict:
    kwargs = clean_kwargs(*args, **kwargs)
    kwargs = merge_config(*args, **kwargs)
    check_missing_kwargs(*args, **kwargs)
    kwargs = set_defaults(*args, **kwargs)
    kwargs.update(check_format(*args, **kwargs))
    kwargs.update(parse_ranges(*args, **kwargs))
    apply_overrides(kwargs.get("tol_override"))
    return kwargs


def fail(msg: str, hint: str = None) -> None:
    print(f"{Fore.RED}{msg}{Style.RESET_ALL}", file=sys.stderr)
    if hint:
        print(f"{Fore.YELLOW}{hint}{Style.RESET_ALL}", file=sys.stderr)
    sys.exit(1)


def clean_kwargs(*args, **kwargs) -> dict:
    # values may come from a config file with stray whitespace
    cleaned_kwargs = {}
    for k, vs in kwargs.items():
        if isinstance(vs, str):
            cleaned_kwargs[k.strip()] = vs.strip().strip("'")
        else:
            cleaned_kwargs[k.strip()] = vs
    return cleaned_kwargs


def load_config(config_path: str) -> dict:
    """Reads a JSON run config, nested params are flattened into flag names."""
    if not os.path.isfile(config_path):
        fail(f"config file not found: {config_path}")
    with open(config_path, "r") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            fail(f"config file {config_path} is not valid JSON: {e}")
    if not isinstance(raw, dict):
        fail(f"config file {config_path} must hold a JSON object")
    flat = dict(raw.pop("params", {}) or {})
    flat.update(raw)
    config = {}
    for k, v in flat.items():
        k = k.replace("-", "_")
        config[config_aliases.get(k, k)] = v
    return config


def merge_config(*args, config: str = None, **kwargs) -> dict:
    """flags > config file > defaults"""
    if config is None:
        return kwargs
    values = load_config(config)
    unknown = set(values) - set(kwargs)
    if unknown:
        fail(f"unknown keys in {config}: {sorted(unknown)}", f"known keys are: {sorted(kwargs)}")
    if values.get("api", kwargs["api"]) != kwargs["api"]:
        fail(f"config {config} is for {values['api']!r}, not {kwargs['api']!r}")
    if isinstance(values.get("tol_override"), dict):
        values["tol_override"] = [f"{k}={v}" for k, v in values["tol_override"].items()]
    for k, v in values.items():
        if kwargs.get(k) is None:
            kwargs[k] = v
    return kwargs


def check_missing_kwargs(*args, api: str, **kwargs) -> None:
    """Uses requireds to check that every parameter of the api is provided"""
    missings = [k for k in requireds.get(api, ()) if kwargs.get(k) is None]
    if missings:
        flags = [f"--{'lambda' if k == 'lam' else k}" for k in missings]
        fail(f"{api} misses required arguments: {flags}", f"required are: {requireds[api]}")


def set_defaults(*args, **kwargs) -> dict:
    api = kwargs["api"]
    for k, v in defaults.get(api, {}).items():
        if kwargs.get(k) is None:
            kwargs[k] = v
    if api == "scan" and kwargs.get("mu_rule") is None:
        if kwargs.get("mu") is not None or kwargs["tau"] == "vis":
            kwargs["mu_rule"] = "fixed"
            kwargs["mu"] = 0.0 if kwargs.get("mu") is None else kwargs["mu"]
        else:
            kwargs["mu_rule"] = "mu0_curve"
    if kwargs.get("workers") is None:
        kwargs["workers"] = sts.workers
    return kwargs


def check_format(*args, api: str, format: str = None, **kwargs) -> dict:
    allowed = formats[api]
    if format is None:
        return {"format": allowed[0]}
    if format not in allowed:
        fail(f"format {format!r} is not available for {api}", f"use one of {allowed}")
    return {"format": format}


def parse_range(value, name: str) -> tuple:
    """'a:b' or 'a:b:n' (or a list) into (a, b) or (a, b, n)"""
    parts = value.split(":") if isinstance(value, str) else list(value)
    try:
        if len(parts) == 2:
            return float(parts[0]), float(parts[1])
        if len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        pass
    fail(f"--{name.replace('_', '-')} must read a:b or a:b:n, got {value!r}")


def parse_ranges(*args, **kwargs) -> dict:
    return {
        name: parse_range(kwargs[name], name)
        for name in ("lambda_range", "beta_range")
        if kwargs.get(name) is not None
    }


def apply_overrides(overrides: list = None) -> dict:
    """
    Sets settings named in k=v strings for this run. Values are cast to the type of
    the setting they replace.
    """
    applied = {}
    for item in overrides or []:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep:
            fail(f"--tol-override expects name=value, got {item!r}")
        if name not in sts.overridable:
            fail(f"unknown setting {name!r}", f"overridable are: {sorted(sts.overridable)}")
        cast = type(getattr(sts, name))
        try:
            applied[name] = cast(value.strip())
        except ValueError:
            fail(f"{name} expects a {cast.__name__}, got {value!r}")
    if applied:
        for name, value in applied.items():
            setattr(sts, name, value)
        # cached saddle-node values depend on the grid and tolerance settings
        from foldsaddle.return_map import find_saddle_node

        find_saddle_node.cache_clear()
    return applied
