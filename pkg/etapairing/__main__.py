from .cli import cli as run_cli

run_cli()
