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
"""Subgroup sample-complexity audits for metric-fair linear learning."""

import json

from pacfair._pacfair import (
    AuditAbort,
    Error,
    IoError,
    ParseError,
    ValidationError,
    collaborative_bounds,
    cross_validate,
    encode,
    estimate_rademacher,
    metric_fairness,
    min_gamma_for_alpha,
    pacf_sample_complexity,
    predict_scores,
    rank_inversions,
    train_logistic,
)
from pacfair import _pacfair


def audit(preset=None, *, markdown=False, **kwargs):
    """Runs the audit and returns the report as a dict.

    With markdown=True, returns (report, markdown_text) instead.
    """
    text, md = _pacfair.audit(preset=preset, **kwargs)
    report = json.loads(text)
    return (report, md) if markdown else report


__all__ = [
    "AuditAbort",
    "Error",
    "IoError",
    "ParseError",
    "ValidationError",
    "audit",
    "collaborative_bounds",
    "cross_validate",
    "encode",
    "estimate_rademacher",
    "metric_fairness",
    "min_gamma_for_alpha",
    "pacf_sample_complexity",
    "predict_scores",
    "rank_inversions",
    "train_logistic",
]
