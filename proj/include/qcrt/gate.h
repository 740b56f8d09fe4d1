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

#ifndef QCRT_GATE_H
#define QCRT_GATE_H

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>

namespace qcrt {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix: {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

enum class GateKind : std::uint8_t { X, Y, Z, H, S, SD, T, TD, P, RX, RY, RZ };

/// A single-qubit gate. Controls are carried separately by whoever applies it.
///
/// Conventions: RX/RY/RZ(t) = exp(-i t A / 2) for A in {X, Y, Z}, and
/// P(l) = diag(1, e^{il}).
struct GateSpec {
    GateKind kind = GateKind::X;
    double param = 0.0;

    bool has_param() const noexcept;
    GateSpec inverse() const noexcept;
    Matrix2 matrix() const;

    bool operator==(const GateSpec &) const = default;
};

bool is_rotation(GateKind kind) noexcept;

/// Lowercase mnemonic used by the IR text format ("h", "sdg", "rz", ...).
std::string_view gate_mnemonic(GateKind kind) noexcept;
std::optional<GateKind> gate_from_mnemonic(std::string_view name) noexcept;

/// True when `b` undoes `a` exactly (same kind and negated parameter for
/// parameterized gates, up to `angle_tolerance`).
bool are_inverse(const GateSpec &a, const GateSpec &b, double angle_tolerance = 1e-12) noexcept;

/// Classical binary operators available to futures and IR registers.
enum class BinOp : std::uint8_t { Add, Sub, Mul, Div, Mod, Shl, Shr, And, Or, Xor, Eq, Ne, Lt, Le, Gt, Ge };

std::string_view binop_mnemonic(BinOp op) noexcept;
std::optional<BinOp> binop_from_mnemonic(std::string_view name) noexcept;

/// Two's-complement 64-bit semantics. Shift amounts are taken modulo 64;
/// `>>` is arithmetic. Division truncates toward zero. Throws
/// ErrorCode::DivisionByZero for a zero divisor.
std::int64_t apply_binop(BinOp op, std::int64_t lhs, std::int64_t rhs);

}  // namespace qcrt

#endif
