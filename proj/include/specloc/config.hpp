#ifndef SPECLOC_CONFIG_HPP
#define SPECLOC_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace specloc {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `section.key = value` configuration.
///
/// Grammar: one assignment per line; a line whose first non-blank character
/// is '#' is a comment; blank lines are ignored; keys match
/// [a-z0-9_]+\.[a-z0-9_]+; values are trimmed verbatim (commas form lists).
/// Duplicate keys are rejected.  Entries are kept sorted by key, so two
/// configs are identical exactly when their canonical() texts match.
class ExperimentConfig {
  public:
    static ExperimentConfig parse_text(const std::string& text);
    static ExperimentConfig parse_file(const std::string& path);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& def) const;
    double get_real(const std::string& key) const;
    double get_real_or(const std::string& key, double def) const;
    long long get_int(const std::string& key) const;
    long long get_int_or(const std::string& key, long long def) const;
    bool get_bool_or(const std::string& key, bool def) const;
    std::vector<double> get_real_list(const std::string& key) const;
    std::vector<long long> get_int_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value);  // upsert

    /// Every key must appear in `known`; missing `required` keys and unknown
    /// keys raise config_error.
    void validate_keys(const std::vector<std::string>& known,
                       const std::vector<std::string>& required) const;

    /// One `key = value` line per entry, sorted by key.
    std::string canonical() const;

    bool operator==(const ExperimentConfig& o) const { return entries_ == o.entries_; }

  private:
    // sorted by key
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace specloc

#endif
