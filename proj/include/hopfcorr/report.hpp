#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopfcorr {

enum class Status { Pass, Fail, Indeterminate };

std::string to_string(Status s);

/// One verification item. A failing check always carries a witness
/// (the word, pair or matrix entry that broke it).
struct Check {
    std::string name;
    bool pass = true;
    std::optional<double> residual;
    std::string witness;
};

class Report {
public:
    Report() = default;
    explicit Report(std::string command) : command_(std::move(command)) {}

    void add(const std::string& name, bool pass,
             std::optional<double> residual = std::nullopt,
             const std::string& witness = "");
    /// Informational entry that does not affect the status.
    void note(const std::string& name, const std::string& text);
    /// Marks the whole report indeterminate (e.g. a window too small to decide).
    void mark_indeterminate(const std::string& why);
    void set_provenance(const std::string& key, const std::string& value);
    void merge(const Report& sub, const std::string& prefix = "");

    Status status() const;
    bool passed() const { return status() == Status::Pass; }
    const std::string& command() const { return command_; }
    const std::vector<Check>& checks() const { return checks_; }
    const std::map<std::string, std::string>& provenance() const { return provenance_; }
    const std::map<std::string, std::string>& notes() const { return notes_; }

    /// Worst residual over all checks that carry one (0 if none).
    double worst_residual() const;
    std::string summary() const;

private:
    std::string command_;
    std::vector<Check> checks_;
    std::map<std::string, std::string> notes_;
    std::map<std::string, std::string> provenance_;
    bool indeterminate_ = false;
};

} // namespace hopfcorr
