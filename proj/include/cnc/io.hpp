#pragma once

// Line-oriented text formats:
//
//   field GF(2)                  # GF(p), GF(2^m), GF(q) or "GF(2^m) poly 0x13"
//   omega 2
//   node S A B X
//   source S
//   chan e1 S A                  # id tail head; declaration order = channel index
//   sink X
//   lek e1 e3 = 1+z              # k_{d,e}(z), see parse_series
//   lek e4 e3 = z/(1-z)
//   inject 1 e1 = 1              # H_s override (1-based source symbol, channel)
//   input t0 = 1 0               # source vector x_0
//
// Stream dumps hold one slot per line: "t | e1:v e2:v ...".

#include <cnc/network.hpp>
#include <cnc/series.hpp>
#include <cnc/simulator.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace cnc {

struct CncDocument {
    CncInstance instance;
    /// Source vectors from "input" lines, rows = slots 0..max declared slot.
    std::optional<FieldMatrix> input;
};

/// Throws ParseError tagged with line and column.
CncDocument parse_document(std::string_view text);

/// Canonical text; parse_document(render_document(c)) reproduces c.
std::string render_document(const CncInstance& c, const std::optional<FieldMatrix>& input = std::nullopt);

/// "GF(2)", "GF(7)", "GF(16)", "GF(2^4)", optionally followed by "poly 0x13".
Field parse_field(std::string_view text);
std::string format_field(const Field& field);

/// Terms "c", "c z", "c z^k" (also "cz^k", "c*z^k", "z^k") joined by + and -,
/// optionally divided by a parenthesized denominator. A numerator with more
/// than one term must be parenthesized before a '/'. Coefficients are
/// canonical field-element integers. Throws ParseError (line 1) on bad input
/// and when the reduced denominator has a zero constant term.
RationalSeries parse_series(std::string_view text, const Field& field);
std::string format_polynomial(const Polynomial& p);
std::string format_series(const RationalSeries& s);

std::string format_stream(const SymbolStream& s, const CncInstance& c);
/// Parses a stream dump into a (T+1) × n matrix of channel symbols. Every
/// channel must appear on every line; '#' lines are ignored.
FieldMatrix parse_stream(std::string_view text, const CncInstance& c);

/// "input tK = v1 ... vω" lines for rows of `x`, slot numbers starting at `first_slot`.
std::string format_input_lines(const FieldMatrix& x, std::size_t first_slot = 0, std::string_view prefix = "");

std::string format_matrix(const FieldMatrix& m);

}  // namespace cnc
