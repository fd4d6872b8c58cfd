#include "hopfcorr/report.hpp"

#include <sstream>

namespace hopfcorr {

void Report::add(const std::string& name, bool pass, std::optional<double> residual,
                 const std::string& witness) {
    Check c;
    c.name = name;
    c.pass = pass;
    c.residual = residual;
    c.witness = (!pass && witness.empty()) ? "(unspecified)" : witness;
    checks_.push_back(std::move(c));
}

void Report::note(const std::string& name, const std::string& text) {
    notes_[name] = text;
}

void Report::mark_indeterminate(const std::string& why) {
    indeterminate_ = true;
    notes_["indeterminate"] = why;
}

void Report::set_provenance(const std::string& key, const std::string& value) {
    provenance_[key] = value;
}

void Report::merge(const Report& sub, const std::string& prefix) {
    for (const auto& c : sub.checks_) {
        Check copy = c;
        if (!prefix.empty()) copy.name = prefix + "/" + c.name;
        checks_.push_back(std::move(copy));
    }
    for (const auto& [k, v] : sub.notes_)
        notes_[prefix.empty() ? k : prefix + "/" + k] = v;
    if (sub.indeterminate_) indeterminate_ = true;
}

Status Report::status() const {
    for (const auto& c : checks_)
        if (!c.pass) return Status::Fail;
    if (indeterminate_) return Status::Indeterminate;
    return Status::Pass;
}

double Report::worst_residual() const {
    double worst = 0.0;
    for (const auto& c : checks_)
        if (c.residual && *c.residual > worst) worst = *c.residual;
    return worst;
}

std::string Report::summary() const {
    std::ostringstream os;
    os << (command_.empty() ? "report" : command_) << ": " << to_string(status());
    int fails = 0;
    std::string first;
    for (const auto& c : checks_)
        if (!c.pass) {
            if (fails == 0) first = c.name + " [" + c.witness + "]";
            ++fails;
        }
    os << " (" << checks_.size() << " checks";
    if (fails) os << ", " << fails << " failed, first: " << first;
    os << ")";
    return os.str();
}

} // namespace hopfcorr
