"""Architecture profile: the knobs that define an encoder/decoder pair."""

from __future__ import annotations

from dataclasses import dataclass, field

N_STAGES = 5  # stride-2 conv stages; image dims must divide by 2**N_STAGES


@dataclass
class ArchitectureProfile:
    """Image geometry, latent size, channel plan and layer constants."""

    image_height: int = 128
    image_width: int = 512
    latent_dim: int = 8
    channels: list[int] = field(default_factory=lambda: [64, 128, 128, 128, 128])
    dropout_rate: float = 0.25
    bn_eps: float = 1e-3
    bn_momentum: float = 0.99

    def __post_init__(self):
        div = 2**N_STAGES
        if self.image_height % div or self.image_width % div:
            raise ValueError(
                f"image dims {self.image_height}x{self.image_width} must be divisible by {div}")
        if self.latent_dim < 1:
            raise ValueError(f"latent_dim must be >= 1, got {self.latent_dim}")
        if len(self.channels) != N_STAGES:
            raise ValueError(f"channel plan needs {N_STAGES} entries, got {len(self.channels)}")

    @property
    def bottleneck_hw(self) -> tuple[int, int]:
        div = 2**N_STAGES
        return self.image_height // div, self.image_width // div

    @property
    def flat_dim(self) -> int:
        h, w = self.bottleneck_hw
        return h * w * self.channels[-1]

    @classmethod
    def full(cls) -> "ArchitectureProfile":
        return cls()

    @classmethod
    def desk(cls) -> "ArchitectureProfile":
        """Quarter-resolution profile for fast training checks."""
        return cls(image_height=64, image_width=256)

    def to_dict(self) -> dict:
        return {
            "image_height": self.image_height,
            "image_width": self.image_width,
            "latent_dim": self.latent_dim,
            "channels": list(self.channels),
            "dropout_rate": self.dropout_rate,
            "bn_eps": self.bn_eps,
            "bn_momentum": self.bn_momentum,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArchitectureProfile":
        return cls(**d)
