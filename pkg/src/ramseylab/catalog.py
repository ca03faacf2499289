"""On-disk certificate catalog: one HRC1 file per certificate name.

Names follow ``<pattern>_k<colors>_n<vertices>`` and declare the pattern the
coloring avoids.  ``RAMSEYLAB_CATALOG`` overrides the shipped directory.
"""

from __future__ import annotations

import os
import re
from pathlib import Path

from .constructions import CERTIFICATES, certificate
from .core import Coloring, Pattern, ValidationError, pattern_catalog
from .formats import read_coloring, write_coloring

ENV_VAR = "RAMSEYLAB_CATALOG"
SHIPPED = Path(__file__).parent / "data" / "catalog"

_NAME = re.compile(r"(?P<pattern>[A-Za-z0-9]+)_k(?P<k>\d+)_n(?P<n>\d+)")


def catalog_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else SHIPPED


def declared_pattern(name: str) -> Pattern:
    m = _NAME.fullmatch(name)
    if not m:
        raise ValidationError(f"catalog name {name!r} does not match <pattern>_k<k>_n<n>")
    return pattern_catalog(m.group("pattern"))


def names() -> list[str]:
    return sorted(p.stem for p in catalog_dir().glob("*.hrc"))


def path_for(name: str) -> Path:
    return catalog_dir() / f"{name}.hrc"


def load(name: str) -> Coloring:
    path = path_for(name)
    if not path.exists():
        raise ValidationError(f"no catalog entry {name!r} in {catalog_dir()}")
    return read_coloring(path)


def write_all(directory: Path | None = None) -> list[Path]:
    """Regenerate the catalog files from their construction rules."""
    out_dir = directory or catalog_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in CERTIFICATES:
        path = out_dir / f"{name}.hrc"
        write_coloring(certificate(name), path)
        written.append(path)
    return written
