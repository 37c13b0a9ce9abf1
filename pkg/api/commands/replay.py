"""
replay command module.
"""
from pathlib import Path
import click
from db.artifacts import load_bundle
from services.experiments import replay_bundle


@click.command("replay")
@click.argument("bundle_dir", type=click.Path(
    exists=True, file_okay=False, path_type=Path))
def replay(bundle_dir: Path) -> None:
    """
    Replay the stored policy of a bundle and check its reward.
    """
    reward: float = replay_bundle(load_bundle(bundle_dir))
    click.echo(f"reward {reward!r} reproduced")
