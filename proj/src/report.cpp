#include "fockrad/report.hpp"

#include <json.hpp>

namespace fockrad {

std::string_view to_string(LemmaId id) {
    switch (id) {
    case LemmaId::Lemma1_1:
        return "L1_1";
    case LemmaId::Lemma1_2:
        return "L1_2";
    case LemmaId::Lemma1_3:
        return "L1_3";
    case LemmaId::Rearrangement:
        return "rearrangement";
    }
    return "unknown";
}

std::string to_json(const LemmaReport& report) {
    nlohmann::ordered_json doc;
    doc["lemma_id"] = to_string(report.lemma_id);
    doc["lhs"] = report.lhs;
    doc["rhs"] = report.rhs;
    doc["slack"] = report.slack;
    doc["witness_n"] = report.witness_n;
    doc["n_searched"] = report.n_searched;
    doc["truncation_bound"] = report.truncation_bound;
    return doc.dump();
}

} // namespace fockrad
