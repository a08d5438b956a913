#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace he3 {

// Error raised for malformed catalog input; carries the 1-based line number.
class CatalogError : public std::runtime_error {
  public:
    CatalogError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// One atomic energy level. Key is "config term" (e.g. "1s2p 3P2").
struct LevelRecord {
    std::string config;   // e.g. "1s2p"
    std::string term;     // e.g. "3P2" (2S+1, L letter, J)
    int twice_J = 0;
    double energy_Hz = 0.0;  // above the species ground reference
    int S_mult() const;      // 2S+1
    int L() const;           // orbital angular momentum
    std::string key() const { return config + " " + term; }
};

// One dipole transition between two catalog levels.
struct LineRecord {
    std::string lower_key;
    std::string upper_key;
    double S_au = 0.0;                // line strength |(J||d||J')|^2, a.u.
    std::optional<double> A_per_s;    // Einstein A, 1/s
};

class Catalog {
  public:
    const LevelRecord& level(const std::string& key) const;
    bool has_level(const std::string& key) const { return index_.count(key) > 0; }
    const std::vector<LevelRecord>& levels() const { return levels_; }
    const std::vector<LineRecord>& lines() const { return lines_; }

    // Lines with the given level on either end.
    std::vector<LineRecord> lines_touching(const std::string& key) const;
    // Lines with the given level as the upper state (decay channels).
    std::vector<LineRecord> decays_of(const std::string& upper_key) const;

    void add_level(LevelRecord lv);
    void add_line(LineRecord ln);  // endpoints must already exist

    std::string to_csv() const;

  private:
    std::vector<LevelRecord> levels_;
    std::vector<LineRecord> lines_;
    std::map<std::string, std::size_t> index_;
};

// Parse the CSV schema
//   kind,config,term,J,energy_Hz,lower_key,upper_key,S_au,A_per_s
// '#' lines are comments; kind is "level" or "line".
Catalog load_atomic_tables(const std::string& path);
Catalog parse_atomic_tables(const std::string& text);

// Branching fractions A_k / sum(A) across the given decay channels.
// All lines must share the same upper level and carry an A coefficient.
std::vector<double> branching_fraction(const LevelRecord& upper,
                                       const std::vector<LineRecord>& decays);

// Einstein A (1/s) from line strength S (a.u.) for a transition at
// frequency nu_Hz with upper-level degeneracy g_upper.
double einstein_A_from_S(double S_au, double nu_Hz, int g_upper);

}  // namespace he3
