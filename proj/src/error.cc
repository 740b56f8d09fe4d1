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

#include "qcrt/error.h"

namespace qcrt {

std::string_view code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ProcessAlreadyExecuted:
            return "E_PROC_EXECUTED";
        case ErrorCode::AllocInsideAdjoint:
            return "E_ALLOC_IN_ADJ";
        case ErrorCode::FreeUnmeasured:
            return "E_FREE_UNMEASURED";
        case ErrorCode::DoubleFree:
            return "E_DOUBLE_FREE";
        case ErrorCode::ForeignQubit:
            return "E_FOREIGN_QUBIT";
        case ErrorCode::QubitNotAllocated:
            return "E_QUBIT_NOT_ALLOCATED";
        case ErrorCode::TargetIsControl:
            return "E_TARGET_IS_CONTROL";
        case ErrorCode::OverlappingControls:
            return "E_OVERLAPPING_CONTROLS";
        case ErrorCode::MeasureInsideCtrl:
            return "E_MEASURE_IN_CTRL";
        case ErrorCode::NonUnitaryInAdjoint:
            return "E_NON_UNITARY_IN_ADJ";
        case ErrorCode::TooManyQubits:
            return "E_TOO_MANY_QUBITS";
        case ErrorCode::EmptyMeasure:
            return "E_EMPTY_MEASURE";
        case ErrorCode::CrossProcessOperands:
            return "E_CROSS_PROCESS";
        case ErrorCode::ForeignFuture:
            return "E_FOREIGN_FUTURE";
        case ErrorCode::ClassicalConditionLoop:
            return "E_CLASSICAL_LOOP";
        case ErrorCode::AllocInBranch:
            return "E_ALLOC_IN_BRANCH";
        case ErrorCode::LoopQubitLeak:
            return "E_LOOP_QUBIT_LEAK";
        case ErrorCode::NotInCone:
            return "E_NOT_IN_CONE";
        case ErrorCode::DivisionByZero:
            return "E_DIV_ZERO";
        case ErrorCode::EmptyDemand:
            return "E_EMPTY_DEMAND";
        case ErrorCode::SyntaxError:
            return "E_SYNTAX";
        case ErrorCode::UnknownMnemonic:
            return "E_UNKNOWN_MNEMONIC";
        case ErrorCode::UndefinedLabel:
            return "E_UNDEFINED_LABEL";
        case ErrorCode::DuplicateLabel:
            return "E_DUPLICATE_LABEL";
        case ErrorCode::InvalidProgram:
            return "E_INVALID_PROGRAM";
        case ErrorCode::InvalidCoupling:
            return "E_INVALID_COUPLING";
        case ErrorCode::StepLimitExceeded:
            return "E_STEP_LIMIT";
        case ErrorCode::QubitLimitExceeded:
            return "E_QUBIT_LIMIT";
        case ErrorCode::QubitNotLive:
            return "E_QUBIT_NOT_LIVE";
        case ErrorCode::QubitAlreadyLive:
            return "E_QUBIT_ALREADY_LIVE";
        case ErrorCode::FreeNotBasisState:
            return "E_FREE_NOT_BASIS";
        case ErrorCode::UnknownExample:
            return "E_UNKNOWN_EXAMPLE";
        case ErrorCode::Io:
            return "E_IO";
    }
    return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {
}

}  // namespace qcrt
