#!/usr/bin/env python3
#
# Copyright (C) 2026 The Lectern Authors
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
#

"""Cross-checks the PDF fixture corpus against pypdf.

Each <name>.pdf is read with pypdf and compared with <name>.txt after removing
whitespace, since pypdf lays out spaces and blank lines on its own terms.
"""
import pathlib
import re
import sys

import pypdf


def squash(s):
    return re.sub(r"\s+", "", s)


def main(argv):
    root = pathlib.Path(argv[1] if len(argv) > 1 else "tests/fixtures/pdf")
    failures = 0
    for pdf in sorted(root.glob("*.pdf")):
        truth = pdf.with_suffix(".txt").read_text(encoding="utf-8")
        reader = pypdf.PdfReader(str(pdf), strict=True)
        pages = [p.extract_text() or "" for p in reader.pages]
        ok = squash("\f".join(pages)) == squash(truth)
        failures += not ok
        print(f"{'ok  ' if ok else 'DIFF'} {pdf.name}: {pages!r}")
    print(f"{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
