from .run import execute_sweep, load_config, render_table, write_table
from .verify import verify_command

__all__ = [
    "execute_sweep",
    "load_config",
    "render_table",
    "verify_command",
    "write_table",
]
