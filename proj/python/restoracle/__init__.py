# Copyright 2026 The restoracle Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Static test oracles for REST APIs."""

import json

from . import _core
from ._core import Error

__all__ = [
    "Error",
    "apply_mutant",
    "campaign",
    "collection",
    "evaluate",
    "extract_fields",
    "infer_heuristic",
    "mutate",
    "normalize",
    "operation_ids",
    "overlap",
    "prompts",
    "score",
    "test_script",
    "validate_set",
]

__version__ = "0.1.0"


def _dump(value):
    return value if isinstance(value, str) else json.dumps(value)


def operation_ids(spec_path):
    """Operation ids of an OpenAPI document, in document order."""
    return list(_core.operation_ids(str(spec_path)))


def extract_fields(spec_path, operation_id):
    """Flattened response fields of one operation."""
    return json.loads(_core.extract_fields(str(spec_path), operation_id))


def prompts(spec_path, operation_id):
    """One prompt bundle per oracle-bearing field."""
    text = _core.prompts_jsonl(str(spec_path), operation_id)
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def infer_heuristic(spec_path, operation_id):
    """Oracle set produced by the offline heuristic backend."""
    return json.loads(_core.infer_heuristic(str(spec_path), operation_id))


def normalize(spec_path, operation_id, field_path, text):
    """Normalized answers of one raw completion for one field."""
    return json.loads(_core.normalize(str(spec_path), operation_id, field_path, text))


def evaluate(oracle_set, response, epsilon=0.0):
    """Violations of an oracle set on one response body."""
    return json.loads(_core.evaluate(_dump(oracle_set), _dump(response), epsilon))


def validate_set(oracle_set, spec_path):
    """Entries that do not fit the operation's fields."""
    return json.loads(_core.validate_set(_dump(oracle_set), str(spec_path)))


def test_script(oracle_set, epsilon=0.0):
    """Postman test script for one operation."""
    return _core.test_script(_dump(oracle_set), epsilon)


def collection(spec_path, oracle_sets, epsilon=0.0):
    """Postman v2.1 collection for the whole document."""
    return json.loads(_core.collection(str(spec_path), [_dump(s) for s in oracle_sets], epsilon))


def mutate(spec_path, operation_id, response, seed):
    """One seeded single-fault mutant record."""
    return json.loads(_core.mutate(str(spec_path), operation_id, _dump(response), seed))


def apply_mutant(mutant, response):
    """The response with the mutant's fault written in."""
    return json.loads(_core.apply_mutant(_dump(mutant), _dump(response)))


def campaign(spec_path, oracle_set, responses, repetitions=100, seed=0):
    """Mutation campaign report and mutant records."""
    return json.loads(
        _core.campaign(str(spec_path), _dump(oracle_set), [_dump(r) for r in responses], repetitions, seed)
    )


def score(predicted, truth):
    """Confusion counts and ratios of a set against ground truth."""
    return json.loads(_core.score(_dump(predicted), _dump(truth)))


def overlap(a, b, truth):
    """Truth oracles recalled by a, b or both."""
    return json.loads(_core.overlap(_dump(a), _dump(b), _dump(truth)))
