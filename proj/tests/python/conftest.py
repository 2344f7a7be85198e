import os
import sys

# the CMake build drops _core next to the test runner's configured dir;
# an installed wheel makes this a no-op
module_dir = os.environ.get("HEIGHTLAB_MODULE_DIR")
if module_dir and module_dir not in sys.path:
    sys.path.insert(0, module_dir)
pkg_dir = os.path.join(os.path.dirname(__file__), "..", "..", "python")
if os.path.isdir(pkg_dir) and pkg_dir not in sys.path:
    sys.path.insert(0, os.path.abspath(pkg_dir))
