#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bellbound/errors.hpp"
#include "bellbound/scenario.hpp"

namespace bellbound {

// Which state `expect`/`check` should evaluate in when the file does not
// carry numbers of its own.
enum class StateChoice { TopEigenvector, PhiPlus, MaximallyMixed };

struct ScenarioFile {
    BellScenario scenario;
    StateChoice state = StateChoice::TopEigenvector;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline double parse_real(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
    }
}

// Accepts `1.5`, `-2e-3` or `(re,im)`.
inline Complex parse_complex(const std::string& tok, int line_no) {
    if (!tok.empty() && tok.front() == '(') {
        if (tok.back() != ')')
            throw ParseError("line " + std::to_string(line_no) + ": unbalanced '" + tok + "'");
        const std::string inner = tok.substr(1, tok.size() - 2);
        const std::size_t comma = inner.find(',');
        if (comma == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected (re,im) in '" +
                             tok + "'");
        return Complex(parse_real(inner.substr(0, comma), line_no),
                       parse_real(inner.substr(comma + 1), line_no));
    }
    return Complex(parse_real(tok, line_no), 0.0);
}

inline ComplexMatrix parse_observable_value(const std::string& value, std::size_t dim,
                                            int line_no) {
    const std::vector<std::string> toks = split_ws(value);
    if (toks.empty())
        throw ParseError("line " + std::to_string(line_no) + ": empty observable");

    if (toks[0] == "pauli_x") return pauli_x();
    if (toks[0] == "pauli_y") return pauli_y();
    if (toks[0] == "pauli_z") return pauli_z();
    if (toks[0] == "identity") return ComplexMatrix::identity(dim);
    if (toks[0] == "bloch") {
        if (toks.size() != 3)
            throw ParseError("line " + std::to_string(line_no) +
                             ": bloch needs two angles (radians)");
        return bloch_observable(parse_real(toks[1], line_no), parse_real(toks[2], line_no));
    }

    // Explicit row-major entry list.
    if (toks.size() != dim * dim)
        throw ParseError("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(dim * dim) + " entries for dimension " +
                         std::to_string(dim) + ", got " + std::to_string(toks.size()));
    std::vector<Complex> entries;
    entries.reserve(toks.size());
    for (const std::string& t : toks) entries.push_back(parse_complex(t, line_no));
    return ComplexMatrix(dim, dim, std::move(entries));
}

} // namespace detail

// Line-oriented `key = value` format. Keys: embedding (tensor|shared),
// value_range (lo hi), dim / dim_a / dim_b, a1 a2 b1 b2 (preset name,
// `bloch theta phi`, or a row-major entry list), state (top|phi_plus|mixed).
// Lines starting with '#' and blank lines are ignored.
inline ScenarioFile parse_scenario(std::istream& in, const Tolerances& tol = {}) {
    std::map<std::string, std::pair<std::string, int>> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key");
        if (kv.count(key))
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        kv[key] = {value, line_no};
    }

    const auto take = [&kv](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        auto out = it->second;
        kv.erase(it);
        return out;
    };

    Embedding embedding = Embedding::TensorEmbedded;
    if (auto e = take("embedding")) {
        if (e->first == "tensor") embedding = Embedding::TensorEmbedded;
        else if (e->first == "shared") embedding = Embedding::SharedSpace;
        else throw ParseError("line " + std::to_string(e->second) +
                              ": embedding must be 'tensor' or 'shared'");
    }

    ValueRange range = kOutcomeRange;
    if (auto r = take("value_range")) {
        const auto toks = detail::split_ws(r->first);
        if (toks.size() != 2)
            throw ParseError("line " + std::to_string(r->second) +
                             ": value_range needs two numbers");
        range.lo = detail::parse_real(toks[0], r->second);
        range.hi = detail::parse_real(toks[1], r->second);
    }

    std::size_t dim_a = 2, dim_b = 2;
    if (auto d = take("dim")) {
        const double v = detail::parse_real(d->first, d->second);
        dim_a = dim_b = static_cast<std::size_t>(v);
    }
    if (auto d = take("dim_a")) dim_a = static_cast<std::size_t>(detail::parse_real(d->first, d->second));
    if (auto d = take("dim_b")) dim_b = static_cast<std::size_t>(detail::parse_real(d->first, d->second));

    const bool tensor = embedding == Embedding::TensorEmbedded;
    const auto obs = [&](const char* key, Site site, std::size_t dim) {
        auto v = take(key);
        if (!v) throw ParseError(std::string("missing observable '") + key + "'");
        return Observable::make(detail::parse_observable_value(v->first, dim, v->second),
                                site, key, tol);
    };
    Observable a1 = obs("a1", tensor ? Site::ArmA : Site::Shared, dim_a);
    Observable a2 = obs("a2", tensor ? Site::ArmA : Site::Shared, dim_a);
    Observable b1 = obs("b1", tensor ? Site::ArmB : Site::Shared, tensor ? dim_b : dim_a);
    Observable b2 = obs("b2", tensor ? Site::ArmB : Site::Shared, tensor ? dim_b : dim_a);

    StateChoice state = StateChoice::TopEigenvector;
    if (auto s = take("state")) {
        if (s->first == "top") state = StateChoice::TopEigenvector;
        else if (s->first == "phi_plus") state = StateChoice::PhiPlus;
        else if (s->first == "mixed") state = StateChoice::MaximallyMixed;
        else throw ParseError("line " + std::to_string(s->second) +
                              ": state must be top, phi_plus or mixed");
    }

    if (!kv.empty())
        throw ParseError("line " + std::to_string(kv.begin()->second.second) +
                         ": unknown key '" + kv.begin()->first + "'");

    return ScenarioFile{
        build_scenario(std::move(a1), std::move(a2), std::move(b1), std::move(b2),
                       embedding, range, tol),
        state};
}

inline ScenarioFile load_scenario(const std::string& path, const Tolerances& tol = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path);
    return parse_scenario(in, tol);
}

// The state a StateChoice stands for, given the scenario.
inline QuantumState resolve_state(const ScenarioFile& f, const Tolerances& tol = {}) {
    const std::size_t dim = f.scenario.total_dimension();
    switch (f.state) {
        case StateChoice::PhiPlus:
            if (dim != 4) throw ShapeError("phi_plus state needs total dimension 4");
            return phi_plus_state();
        case StateChoice::MaximallyMixed:
            return QuantumState::maximally_mixed(dim);
        case StateChoice::TopEigenvector:
        default: {
            ComplexMatrix b = bell_operator(f.scenario);
            if (f.scenario.embedding == Embedding::SharedSpace) b = b.hermitian_part();
            const Spectrum s = hermitian_eigen(b, tol);
            return QuantumState::pure_normalized(s.eigenvector(0));
        }
    }
}

} // namespace bellbound
