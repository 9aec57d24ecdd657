"""Single-photon mode labels.

A mode is a path (A or B) together with an internal transverse label. The
label is an azimuthal index l, a radial index p, a polarization (0 = H,
1 = V) or a generic integer tag, selected by the basis tag.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Tuple

from loolsim.utils.errors import ModeTagError


class Path(IntEnum):
    """Spatial path of a photon (beamsplitter port)."""

    A = 0
    B = 1


class BasisTag(IntEnum):
    """Interpretation of a mode's integer label."""

    AZIMUTHAL = 0
    RADIAL = 1
    POLARIZATION = 2
    GENERIC = 3


@dataclass(frozen=True)
class ModeIndex:
    """A labeled single-photon mode.

    Two ModeIndex values are the same mode iff path, label and basis tag
    are all equal.
    """

    path: Path
    label: int
    basis_tag: BasisTag = BasisTag.AZIMUTHAL

    def __post_init__(self):
        # Accept plain ints / strings for convenience, store the enums.
        object.__setattr__(self, "path", as_path(self.path))
        object.__setattr__(self, "basis_tag", BasisTag(self.basis_tag))
        object.__setattr__(self, "label", int(self.label))
        if self.basis_tag == BasisTag.RADIAL and self.label < 0:
            raise ModeTagError(f"Radial index must be >= 0, got p={self.label}")

    @classmethod
    def azimuthal(cls, path, l: int) -> "ModeIndex":
        """Mode carrying OAM l on the given path."""
        return cls(path, l, BasisTag.AZIMUTHAL)

    @classmethod
    def radial(cls, path, p: int) -> "ModeIndex":
        """Mode with radial index p on the given path."""
        return cls(path, p, BasisTag.RADIAL)

    @classmethod
    def polarization(cls, path, vertical: bool) -> "ModeIndex":
        """H (vertical=False) or V (vertical=True) mode on the given path."""
        return cls(path, 1 if vertical else 0, BasisTag.POLARIZATION)

    @classmethod
    def generic(cls, path, tag: int) -> "ModeIndex":
        """Generic distinguishable mode (used for undetected sink modes)."""
        return cls(path, tag, BasisTag.GENERIC)

    def sort_key(self) -> Tuple[int, int, int]:
        """Canonical ordering key: (path, basis_tag, label)."""
        return (int(self.path), int(self.basis_tag), self.label)

    def with_label(self, label: int) -> "ModeIndex":
        """Same path and basis tag, new label."""
        return ModeIndex(self.path, label, self.basis_tag)

    def with_path(self, path) -> "ModeIndex":
        """Same internal label on another path."""
        return ModeIndex(path, self.label, self.basis_tag)

    def __str__(self) -> str:
        symbol = {
            BasisTag.AZIMUTHAL: "l",
            BasisTag.RADIAL: "p",
            BasisTag.POLARIZATION: "pol",
            BasisTag.GENERIC: "g",
        }[self.basis_tag]
        return f"{self.path.name}:{symbol}={self.label}"


def as_path(value) -> Path:
    """Coerce a Path, its integer value or "A"/"B" to Path."""
    if isinstance(value, Path):
        return value
    if isinstance(value, str):
        try:
            return Path[value.upper()]
        except KeyError:
            raise ModeTagError(f"Unknown path {value!r}, expected 'A' or 'B'") from None
    return Path(value)
