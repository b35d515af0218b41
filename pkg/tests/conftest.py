import sys
from pathlib import Path

# Allow running pytest from a fresh checkout without the editable install.
try:
    import ctxsd  # noqa: F401
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
