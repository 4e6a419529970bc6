"""
Process entry point: python -m src.main
"""
from .presentation.cli import cli


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
