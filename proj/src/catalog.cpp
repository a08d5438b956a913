#include "he3/catalog.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "he3/constants.hpp"

namespace he3 {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& s, int lineno, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CatalogError(lineno, std::string("bad ") + what + " value '" + s + "'");
    }
}

}  // namespace

int LevelRecord::S_mult() const {
    if (term.empty() || !isdigit(term[0]))
        throw std::runtime_error("bad term symbol '" + term + "'");
    return term[0] - '0';
}

int LevelRecord::L() const {
    static const std::string letters = "SPDFGHIK";
    if (term.size() < 2) throw std::runtime_error("bad term symbol '" + term + "'");
    auto pos = letters.find(term[1]);
    if (pos == std::string::npos)
        throw std::runtime_error("bad term symbol '" + term + "'");
    return int(pos);
}

const LevelRecord& Catalog::level(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end())
        throw std::runtime_error("unknown level '" + key + "'");
    return levels_[it->second];
}

std::vector<LineRecord> Catalog::lines_touching(const std::string& key) const {
    std::vector<LineRecord> out;
    for (const auto& ln : lines_)
        if (ln.lower_key == key || ln.upper_key == key) out.push_back(ln);
    return out;
}

std::vector<LineRecord> Catalog::decays_of(const std::string& upper_key) const {
    std::vector<LineRecord> out;
    for (const auto& ln : lines_)
        if (ln.upper_key == upper_key) out.push_back(ln);
    return out;
}

void Catalog::add_level(LevelRecord lv) {
    if (index_.count(lv.key()))
        throw std::runtime_error("duplicate level key '" + lv.key() + "'");
    index_[lv.key()] = levels_.size();
    levels_.push_back(std::move(lv));
}

void Catalog::add_line(LineRecord ln) {
    if (!index_.count(ln.lower_key))
        throw std::runtime_error("dangling level reference '" + ln.lower_key + "'");
    if (!index_.count(ln.upper_key))
        throw std::runtime_error("dangling level reference '" + ln.upper_key + "'");
    lines_.push_back(std::move(ln));
}

std::string Catalog::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "kind,config,term,J,energy_Hz,lower_key,upper_key,S_au,A_per_s\n";
    for (const auto& lv : levels_)
        out << "level," << lv.config << "," << lv.term << "," << 0.5 * lv.twice_J
            << "," << lv.energy_Hz << ",,,,\n";
    for (const auto& ln : lines_) {
        out << "line,,,,," << ln.lower_key << "," << ln.upper_key << ","
            << ln.S_au << ",";
        if (ln.A_per_s) out << *ln.A_per_s;
        out << "\n";
    }
    return out.str();
}

Catalog parse_atomic_tables(const std::string& text) {
    Catalog cat;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv(line);
        if (!saw_header) {
            if (f.empty() || f[0] != "kind")
                throw CatalogError(lineno, "missing CSV header");
            saw_header = true;
            continue;
        }
        if (f.size() != 9)
            throw CatalogError(lineno, "expected 9 fields, got " +
                                           std::to_string(f.size()));
        if (f[0] == "level") {
            LevelRecord lv;
            lv.config = f[1];
            lv.term = f[2];
            double J = parse_double(f[3], lineno, "J");
            lv.twice_J = int(std::lround(2 * J));
            if (lv.twice_J < 0) throw CatalogError(lineno, "negative J");
            lv.energy_Hz = parse_double(f[4], lineno, "energy_Hz");
            if (!std::isfinite(lv.energy_Hz) || lv.energy_Hz < 0)
                throw CatalogError(lineno, "bad energy");
            try {
                lv.S_mult();
                lv.L();
                cat.add_level(std::move(lv));
            } catch (const std::runtime_error& e) {
                throw CatalogError(lineno, e.what());
            }
        } else if (f[0] == "line") {
            LineRecord ln;
            ln.lower_key = f[5];
            ln.upper_key = f[6];
            ln.S_au = parse_double(f[7], lineno, "S_au");
            if (ln.S_au < 0) throw CatalogError(lineno, "negative line strength");
            if (!f[8].empty()) {
                double A = parse_double(f[8], lineno, "A_per_s");
                if (A < 0) throw CatalogError(lineno, "negative Einstein A");
                ln.A_per_s = A;
            }
            try {
                cat.add_line(std::move(ln));
            } catch (const std::runtime_error& e) {
                throw CatalogError(lineno, e.what());
            }
        } else {
            throw CatalogError(lineno, "unknown kind '" + f[0] + "'");
        }
    }
    return cat;
}

Catalog load_atomic_tables(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_atomic_tables(ss.str());
}

std::vector<double> branching_fraction(const LevelRecord& upper,
                                       const std::vector<LineRecord>& decays) {
    if (decays.empty())
        throw std::runtime_error("no decay channels given");
    double total = 0.0;
    std::vector<double> A;
    for (const auto& ln : decays) {
        if (ln.upper_key != upper.key())
            throw std::runtime_error("decay line does not originate from " +
                                     upper.key());
        if (!ln.A_per_s)
            throw std::runtime_error("no Einstein A available for " +
                                     ln.lower_key + " <- " + ln.upper_key);
        A.push_back(*ln.A_per_s);
        total += *ln.A_per_s;
    }
    if (total <= 0) throw std::runtime_error("all Einstein A coefficients zero");
    for (auto& a : A) a /= total;
    return A;
}

double einstein_A_from_S(double S_au, double nu_Hz, int g_upper) {
    using namespace constants;
    const double omega = 2 * std::numbers::pi * nu_Hz;
    const double S_SI = S_au * dipole_au * dipole_au;
    return omega * omega * omega * S_SI /
           (3 * std::numbers::pi * eps0 * hbar * c * c * c * g_upper);
}

}  // namespace he3
