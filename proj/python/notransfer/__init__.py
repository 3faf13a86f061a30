# Copyright 2026 The notransfer Authors.
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

"""Exact analysis of mechanisms without transfers on finite type spaces.

Every analysis accepts instances and mechanisms as dicts, JSON strings or
file paths, and returns the report as a dict. Rationals are exact strings
such as "1/2"; use ``fractions.Fraction`` to do arithmetic on them.
"""

import json
import os
from fractions import Fraction

from . import _core
from ._core import IoError, PreconditionError, SchemaError

__all__ = [
    "IoError",
    "PreconditionError",
    "SchemaError",
    "additivity",
    "alloc_n",
    "check_ic",
    "classify",
    "construct",
    "decompose",
    "generate",
    "inspect",
    "maximin",
    "myo",
    "oracle",
    "orthogonal",
    "render_text",
    "run",
    "spans",
    "to_fraction",
    "transport",
]


def _text(doc):
    if isinstance(doc, (dict, list)):
        return json.dumps(doc)
    if isinstance(doc, (str, os.PathLike)) and os.path.isfile(doc):
        with open(doc, encoding="utf-8") as f:
            return f.read()
    if isinstance(doc, str):
        return doc
    raise TypeError(f"expected a dict, JSON text or a path, got {type(doc).__name__}")


def _unary(name):
    fn = getattr(_core, name)

    def call(instance, drop_zero_types=False):
        return json.loads(fn(_text(instance), drop_zero_types))

    call.__name__ = name
    call.__doc__ = fn.__doc__
    return call


def _binary(name):
    fn = getattr(_core, name)

    def call(first, second, drop_zero_types=False):
        return json.loads(fn(_text(first), _text(second), drop_zero_types))

    call.__name__ = name
    call.__doc__ = fn.__doc__
    return call


inspect = _unary("inspect")
classify = _unary("classify")
additivity = _unary("additivity")
construct = _unary("construct")
transport = _unary("transport")
myo = _unary("myo")
alloc_n = _unary("alloc_n")
oracle = _unary("oracle")
check_ic = _binary("check_ic")
spans = _binary("spans")
orthogonal = _binary("orthogonal")
decompose = _binary("decompose")


def maximin(mechanism, instance=None, drop_zero_types=False):
    other = None if instance is None else _text(instance)
    return json.loads(_core.maximin(_text(mechanism), other, drop_zero_types))


def generate(kind="independent", shape=(), seed=0, **options):
    """Deterministic random instance; options mirror the CLI flags."""
    return json.loads(_core.generate(kind=kind, shape=list(shape), seed=seed, **options))


def render_text(report):
    return _core.render_text(_text(report))


def run(args):
    """Run the CLI in-process. Returns (exit_code, stdout, stderr)."""
    return _core.run([str(a) for a in args])


def to_fraction(value):
    """Convert a report's rational strings (possibly nested) to Fractions."""
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, list):
        return [to_fraction(v) for v in value]
    raise TypeError(f"not a rational or array of rationals: {value!r}")
