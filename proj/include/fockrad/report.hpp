#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fockrad {

/// Which inequality a report certifies. The three numbered entries are the
/// measurable-set, weighted-family and general-symbol inequalities; the
/// rearrangement entry tags reports produced by the extremal-window
/// dominance check.
enum class LemmaId { Lemma1_1, Lemma1_2, Lemma1_3, Rearrangement };

std::string_view to_string(LemmaId id);

/// Both sides of one inequality instance plus the witness data: which kernel
/// order attained the left-hand side, how far the order search ran, and the
/// certified bound on everything beyond it.
struct LemmaReport {
    LemmaId lemma_id = LemmaId::Lemma1_1;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs; >= -1e-10 for every valid input
    std::int64_t witness_n = 0;
    std::int64_t n_searched = 0;
    double truncation_bound = 0.0;
};

/// JSON rendering with exactly the fields above, in stable key order.
std::string to_json(const LemmaReport& report);

} // namespace fockrad
