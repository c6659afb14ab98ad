# Copyright 2026 The oqcc Authors
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
"""Compile open-system evolutions into measurement-and-feedback programs."""

from ._oqcc import (
    OqccError,
    Program,
    apply_channel,
    channel_distance,
    choi,
    commutator_step,
    compile_channel,
    compile_lindblad,
    expm,
    heig,
    polar,
    propagate,
    verify,
)

__all__ = [
    "OqccError",
    "Program",
    "apply_channel",
    "channel_distance",
    "choi",
    "commutator_step",
    "compile_channel",
    "compile_lindblad",
    "expm",
    "heig",
    "polar",
    "propagate",
    "verify",
]

__version__ = "0.1.0"
