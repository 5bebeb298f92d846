"""VAE assembly, losses, training, checkpointing."""

from .checkpoint import ModelCheckpoint, load_checkpoint
from .losses import (
    BCE_EPSILON,
    LossBreakdown,
    kl_loss,
    kl_loss_grads,
    reconstruction_loss,
    reconstruction_loss_grad,
    reparameterize,
    total_loss,
)
from .profile import ArchitectureProfile
from .train import TrainConfig, history_metadata, train, write_history_csv
from .vae import VAE, Decoder, Encoder

__all__ = [
    "ModelCheckpoint", "load_checkpoint",
    "BCE_EPSILON", "LossBreakdown", "kl_loss", "kl_loss_grads",
    "reconstruction_loss", "reconstruction_loss_grad", "reparameterize", "total_loss",
    "ArchitectureProfile", "TrainConfig", "history_metadata", "train", "write_history_csv",
    "VAE", "Decoder", "Encoder",
]
