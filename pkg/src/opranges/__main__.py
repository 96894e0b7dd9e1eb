"""Main entry point for the opranges CLI app."""

from opranges.cli.commands import app


def main() -> None:
    """Run the opranges CLI app."""
    app()


if __name__ == "__main__":
    main()
