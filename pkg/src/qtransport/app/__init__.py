from .config import ConfigError, RunConfig, SweepSpec, load_config
from .commands import cmd_coeffs, cmd_fig2, cmd_sweep, cmd_trajectory

__all__ = [
    "ConfigError",
    "RunConfig",
    "SweepSpec",
    "load_config",
    "cmd_coeffs",
    "cmd_fig2",
    "cmd_sweep",
    "cmd_trajectory",
]
