// Copyright 2026 The qcrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCRT_ERROR_H
#define QCRT_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcrt {

/// Stable machine-readable error codes. The string form (see `code_name`) is
/// part of the CLI contract and must not change.
enum class ErrorCode {
    // Runtime recording.
    ProcessAlreadyExecuted,
    AllocInsideAdjoint,
    FreeUnmeasured,
    DoubleFree,
    ForeignQubit,
    QubitNotAllocated,
    TargetIsControl,
    OverlappingControls,
    MeasureInsideCtrl,
    NonUnitaryInAdjoint,
    TooManyQubits,
    EmptyMeasure,
    CrossProcessOperands,
    ForeignFuture,
    ClassicalConditionLoop,
    AllocInBranch,
    LoopQubitLeak,
    NotInCone,
    // Classical evaluation.
    DivisionByZero,
    // Codegen.
    EmptyDemand,
    // IR text and validation.
    SyntaxError,
    UnknownMnemonic,
    UndefinedLabel,
    DuplicateLabel,
    InvalidProgram,
    InvalidCoupling,
    // Simulator.
    StepLimitExceeded,
    QubitLimitExceeded,
    QubitNotLive,
    QubitAlreadyLive,
    FreeNotBasisState,
    // CLI.
    UnknownExample,
    Io,
};

std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace qcrt

#endif
