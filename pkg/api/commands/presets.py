"""
presets command module.
"""
import click
from services.experiments import PRESETS


@click.command("presets")
def presets() -> None:
    """
    List the experiment presets and their hyperparameters.
    """
    for name, preset in PRESETS.items():
        trainer = preset.trainer
        env = trainer.env
        click.echo(
            f"{name}: {preset.description}\n"
            f"  agents={trainer.n_agents} iterations={trainer.n_iterations}"
            f" episodes={trainer.n_episodes} samples={trainer.n_samples}"
            f" t_step={env.t_step} k_step={env.k_step} t_opt={env.t_opt}"
            f" j={env.spin.j} decoherence="
            f"{env.params.decoherence_kind.value}:{env.params.rate}")
