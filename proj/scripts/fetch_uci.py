#!/usr/bin/env python3
# Copyright 2026 The pacfair Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Re-fetches adult.data and german.data and checks them byte for byte.

Tries the UCI archive first. When that is unreachable, falls back to the
copies shipped inside the `responsibly` 0.1.2 wheel, fetched with pip.

    python3 scripts/fetch_uci.py [--dest data] [--source uci|wheel]
"""

import argparse
import functools
import hashlib
import pathlib
import subprocess
import sys
import tempfile
import urllib.request
import zipfile

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
FILES = {
    "adult.data": {
        "url": f"{UCI}/adult/adult.data",
        "wheel_path": "responsibly/dataset/adult/adult.data",
        "sha256": "5b00264637dbfec36bdeaab5676b0b309ff9eb788d63554ca0a249491c86603d",
    },
    "german.data": {
        "url": f"{UCI}/statlog/german/german.data",
        "wheel_path": "responsibly/dataset/german/german.data",
        "sha256": "b21f3d81db8071257d5ff1deaeba1fd4303b62712e6fcc9715c7a86202cb5871",
    },
}


def from_uci(name):
    with urllib.request.urlopen(FILES[name]["url"], timeout=60) as resp:
        return resp.read()


@functools.lru_cache(maxsize=None)
def _wheel():
    tmp = tempfile.mkdtemp()
    subprocess.run(
        [sys.executable, "-m", "pip", "download", "--no-deps", "--only-binary=:all:",
         "-d", tmp, "responsibly==0.1.2"],
        check=True, stdout=subprocess.DEVNULL)
    return next(pathlib.Path(tmp).glob("responsibly-*.whl"))


def from_wheel(name):
    with zipfile.ZipFile(_wheel()) as z:
        return z.read(FILES[name]["wheel_path"])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default=pathlib.Path(__file__).resolve().parent.parent / "data",
                    type=pathlib.Path)
    ap.add_argument("--source", choices=["uci", "wheel"], default=None,
                    help="force one source (default: uci, then wheel)")
    args = ap.parse_args()
    args.dest.mkdir(parents=True, exist_ok=True)

    sources = {"uci": [from_uci], "wheel": [from_wheel], None: [from_uci, from_wheel]}[args.source]
    status = 0
    for name, info in FILES.items():
        blob = None
        for fetch in sources:
            try:
                blob = fetch(name)
                break
            except Exception as e:  # noqa: BLE001 - any failure moves to the next source
                print(f"{name}: {fetch.__name__} failed: {e}", file=sys.stderr)
        if blob is None:
            status = 1
            continue
        digest = hashlib.sha256(blob).hexdigest()
        if digest != info["sha256"]:
            print(f"{name}: sha256 {digest} does not match {info['sha256']}", file=sys.stderr)
            status = 1
            continue
        (args.dest / name).write_bytes(blob)
        print(f"{name}: {len(blob)} bytes, sha256 ok")
    return status


if __name__ == "__main__":
    sys.exit(main())
