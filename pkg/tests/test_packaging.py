# Copyright 2026 The mobile_dcp developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later
# version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along with
# this program.  If not, see <http://www.gnu.org/licenses/>.

from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def _keys(path):
    """Indented ``key:`` lines of a small YAML file, as ``(indent, key)`` pairs."""
    keys = []
    for line in path.read_text(encoding="utf-8").splitlines():
        stripped = line.split("#", 1)[0].rstrip()
        if stripped.endswith(":") and not stripped.lstrip().startswith("-"):
            keys.append((len(stripped) - len(stripped.lstrip()), stripped.strip()[:-1]))
    return keys


def test_readthedocs_build_section():
    keys = _keys(ROOT/"readthedocs.yml")
    assert (0, "build") in keys
    assert (2, "tools") in keys
    text = (ROOT/"readthedocs.yml").read_text(encoding="utf-8")
    assert "os: ubuntu-" in text
    assert 'python: "3.' in text
    # python.version was removed from the v2 config format
    assert "version: 3" not in text
