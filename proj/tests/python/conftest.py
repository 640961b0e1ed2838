import os
import sys

# Development layout: point at the built extension and the python package
# without installing the wheel.
_src = os.environ.get("PHASEKIT_SRC")
if _src:
    sys.path.insert(0, os.path.join(_src, "python"))
_ext = os.environ.get("PHASEKIT_EXT_DIR")
if _ext:
    sys.path.insert(0, _ext)
