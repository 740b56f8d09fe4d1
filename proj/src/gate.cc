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

#include "qcrt/gate.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "qcrt/error.h"

namespace qcrt {

namespace {

constexpr std::array<std::string_view, 12> kGateNames = {
    "x", "y", "z", "h", "s", "sdg", "t", "tdg", "p", "rx", "ry", "rz"};

constexpr std::array<std::string_view, 16> kBinOpNames = {
    "add", "sub", "mul", "div", "mod", "shl", "shr", "and", "or", "xor", "eq", "ne", "lt", "le", "gt", "ge"};

}  // namespace

bool is_rotation(GateKind kind) noexcept {
    return kind == GateKind::P || kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

bool GateSpec::has_param() const noexcept {
    return is_rotation(kind);
}

GateSpec GateSpec::inverse() const noexcept {
    switch (kind) {
        case GateKind::S:
            return {GateKind::SD, 0.0};
        case GateKind::SD:
            return {GateKind::S, 0.0};
        case GateKind::T:
            return {GateKind::TD, 0.0};
        case GateKind::TD:
            return {GateKind::T, 0.0};
        case GateKind::P:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            return {kind, -param};
        default:
            return *this;
    }
}

Matrix2 GateSpec::matrix() const {
    using std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    switch (kind) {
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y:
            return {0.0, -i, i, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::H:
            return {1.0 / sqrt2, 1.0 / sqrt2, 1.0 / sqrt2, -1.0 / sqrt2};
        case GateKind::S:
            return {1.0, 0.0, 0.0, i};
        case GateKind::SD:
            return {1.0, 0.0, 0.0, -i};
        case GateKind::T:
            return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
        case GateKind::TD:
            return {1.0, 0.0, 0.0, std::polar(1.0, -std::numbers::pi / 4)};
        case GateKind::P:
            return {1.0, 0.0, 0.0, std::polar(1.0, param)};
        case GateKind::RX: {
            double c = std::cos(param / 2), s = std::sin(param / 2);
            return {c, -i * s, -i * s, c};
        }
        case GateKind::RY: {
            double c = std::cos(param / 2), s = std::sin(param / 2);
            return {c, -s, s, c};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -param / 2), 0.0, 0.0, std::polar(1.0, param / 2)};
    }
    return {1.0, 0.0, 0.0, 1.0};
}

std::string_view gate_mnemonic(GateKind kind) noexcept {
    return kGateNames[static_cast<std::size_t>(kind)];
}

std::optional<GateKind> gate_from_mnemonic(std::string_view name) noexcept {
    for (std::size_t k = 0; k < kGateNames.size(); k++) {
        if (kGateNames[k] == name) {
            return static_cast<GateKind>(k);
        }
    }
    return std::nullopt;
}

bool are_inverse(const GateSpec &a, const GateSpec &b, double angle_tolerance) noexcept {
    GateSpec inv = a.inverse();
    if (inv.kind != b.kind) {
        return false;
    }
    if (!b.has_param()) {
        return true;
    }
    return std::abs(inv.param - b.param) <= angle_tolerance;
}

std::string_view binop_mnemonic(BinOp op) noexcept {
    return kBinOpNames[static_cast<std::size_t>(op)];
}

std::optional<BinOp> binop_from_mnemonic(std::string_view name) noexcept {
    for (std::size_t k = 0; k < kBinOpNames.size(); k++) {
        if (kBinOpNames[k] == name) {
            return static_cast<BinOp>(k);
        }
    }
    return std::nullopt;
}

std::int64_t apply_binop(BinOp op, std::int64_t lhs, std::int64_t rhs) {
    auto ul = static_cast<std::uint64_t>(lhs);
    auto ur = static_cast<std::uint64_t>(rhs);
    switch (op) {
        case BinOp::Add:
            return static_cast<std::int64_t>(ul + ur);
        case BinOp::Sub:
            return static_cast<std::int64_t>(ul - ur);
        case BinOp::Mul:
            return static_cast<std::int64_t>(ul * ur);
        case BinOp::Div:
        case BinOp::Mod:
            if (rhs == 0) {
                throw Error(ErrorCode::DivisionByZero, std::string(binop_mnemonic(op)) + " by zero");
            }
            if (lhs == std::numeric_limits<std::int64_t>::min() && rhs == -1) {
                return op == BinOp::Div ? lhs : 0;
            }
            return op == BinOp::Div ? lhs / rhs : lhs % rhs;
        case BinOp::Shl:
            return static_cast<std::int64_t>(ul << (ur & 63));
        case BinOp::Shr:
            return lhs >> (ur & 63);
        case BinOp::And:
            return lhs & rhs;
        case BinOp::Or:
            return lhs | rhs;
        case BinOp::Xor:
            return lhs ^ rhs;
        case BinOp::Eq:
            return lhs == rhs;
        case BinOp::Ne:
            return lhs != rhs;
        case BinOp::Lt:
            return lhs < rhs;
        case BinOp::Le:
            return lhs <= rhs;
        case BinOp::Gt:
            return lhs > rhs;
        case BinOp::Ge:
            return lhs >= rhs;
    }
    return 0;
}

}  // namespace qcrt
