"""Bridge facade dataset synthesis, convolutional VAE, latent-space exploration."""

__version__ = "0.1.0"
