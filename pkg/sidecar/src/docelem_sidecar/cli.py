from pathlib import Path

import click
import uvicorn

from .serve import create_app


@click.group()
def main() -> None:
    """Model backend for the document extraction service."""


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8200, show_default=True)
@click.option(
    "--model-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("models"),
    show_default=True,
)
def serve(host: str, port: int, model_dir: Path) -> None:
    """Serve the tag/train endpoints."""
    uvicorn.run(create_app(model_dir), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
