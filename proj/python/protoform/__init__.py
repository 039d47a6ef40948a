# Copyright 2026 The Protoform Authors.
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

"""Linguistic summaries of event logs built on fuzzy temporal protoforms."""

import json
from pathlib import Path

from ._core import (
    CausalGraph,
    ConfigError,
    ContractViolation,
    Error,
    EvaluationError,
    EventLog,
    KnowledgeBase,
    NotFoundError,
    ParseError,
    VacuousStatementError,
    ValidationError,
    dependency_score,
    discover,
    generate_synthetic_log,
    load_knowledge_base,
    membership,
    parse_event_log,
    quantifier_truth,
    relation_samples,
    summarize_text,
    validate_log,
)
from ._core import summarize_json as _summarize_json

__all__ = [
    "CausalGraph",
    "ConfigError",
    "ContractViolation",
    "Error",
    "EvaluationError",
    "EventLog",
    "KnowledgeBase",
    "NotFoundError",
    "ParseError",
    "VacuousStatementError",
    "ValidationError",
    "dependency_score",
    "discover",
    "generate_synthetic_log",
    "load_knowledge_base",
    "membership",
    "parse_event_log",
    "quantifier_truth",
    "read_event_log",
    "read_knowledge_base",
    "relation_samples",
    "summarize",
    "summarize_text",
    "validate_log",
]


def read_event_log(path, **mapping):
    return parse_event_log(Path(path).read_text(encoding="utf-8"), **mapping)


def read_knowledge_base(path):
    return load_knowledge_base(Path(path).read_text(encoding="utf-8"))


def summarize(log, kb, families=None, reproducible=False, threads=0):
    """Ranked report as a dict with generated_at, log_digest and entries."""
    return json.loads(_summarize_json(log, kb, families, reproducible, threads))
