#ifndef WG_IO_HPP
#define WG_IO_HPP

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "algcode.hpp"
#include "attack.hpp"
#include "distinguisher.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace wg {

struct ParseError : std::runtime_error {
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

// Parsed WGKEY v1 file. Secret lines are optional: a public-only file (for
// black-box attacks) simply omits them.
struct KeyFile {
    int q = 0, n = 0, r = 0;
    std::vector<elem> modulus_base, modulus_ext;
    std::optional<std::vector<elem>> secret_x;
    std::optional<Poly> secret_gamma;
    Mat public_G;
};

namespace detail_io {

inline std::vector<long long> parse_ints(const std::string& s, const std::string& path, std::size_t line) {
    std::istringstream in(s);
    std::vector<long long> out;
    long long v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw ParseError(path, line, "expected whitespace-separated integers");
    return out;
}

inline std::vector<elem> to_elems(const std::vector<long long>& v, long long bound, const std::string& path,
                                  std::size_t line) {
    std::vector<elem> out;
    out.reserve(v.size());
    for (long long x : v) {
        if (x < 0 || x >= bound) throw ParseError(path, line, "element out of range");
        out.push_back(static_cast<elem>(x));
    }
    return out;
}

// Writes to path.tmp, then renames over path.
inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("rename failed: " + path);
}

} // namespace detail_io

// Matrix block: "n k q_level" then k rows of n canonical integers.
inline std::string format_matrix(const Mat& M, long long q_level) {
    std::ostringstream out;
    out << M.cols << " " << M.rows << " " << q_level << "\n";
    for (std::size_t r = 0; r < M.rows; ++r) {
        for (std::size_t c = 0; c < M.cols; ++c) out << (c ? " " : "") << M.at(r, c);
        out << "\n";
    }
    return out.str();
}

inline Mat parse_matrix_block(const std::vector<std::string>& lines, std::size_t& idx, long long& q_level,
                              const std::string& path) {
    if (idx >= lines.size()) throw ParseError(path, lines.size(), "missing matrix header");
    auto hdr = detail_io::parse_ints(lines[idx], path, idx + 1);
    if (hdr.size() != 3) throw ParseError(path, idx + 1, "matrix header must be: n k q_level");
    const long long n = hdr[0], k = hdr[1];
    q_level = hdr[2];
    if (n < 0 || k < 0 || q_level < 2) throw ParseError(path, idx + 1, "bad matrix header values");
    ++idx;
    Mat M(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    for (long long r = 0; r < k; ++r, ++idx) {
        if (idx >= lines.size()) throw ParseError(path, lines.size(), "matrix truncated");
        auto row = detail_io::parse_ints(lines[idx], path, idx + 1);
        if (static_cast<long long>(row.size()) != n) throw ParseError(path, idx + 1, "matrix row width mismatch");
        auto er = detail_io::to_elems(row, q_level, path, idx + 1);
        for (long long c = 0; c < n; ++c) M.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = er[c];
    }
    return M;
}

inline std::string format_key(const FieldTower& F, const WildKeyPair& key, bool with_secret) {
    std::ostringstream out;
    out << "WGKEY v1\n";
    out << "q=" << key.q << " m=2 n=" << key.n << " r=" << key.r << "\n";
    out << "modulus.base=";
    for (std::size_t i = 0; i < F.modulus_base.size(); ++i) out << (i ? " " : "") << F.modulus_base[i];
    out << "\nmodulus.ext=";
    for (std::size_t i = 0; i < F.modulus_ext.size(); ++i) out << (i ? " " : "") << F.modulus_ext[i];
    out << "\n";
    if (with_secret) {
        out << "secret.x=";
        for (std::size_t i = 0; i < key.x.size(); ++i) out << (i ? " " : "") << key.x[i];
        out << "\nsecret.gamma=";
        for (std::size_t i = 0; i < key.gamma.c.size(); ++i) out << (i ? " " : "") << key.gamma.c[i];
        out << "\n";
    }
    out << "public.G=\n" << format_matrix(key.pub_scrambled, key.q);
    return out.str();
}

inline void write_key(const std::string& path, const FieldTower& F, const WildKeyPair& key, bool with_secret = true) {
    detail_io::atomic_write(path, format_key(F, key, with_secret));
}

inline KeyFile read_key(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(std::move(l));
    if (lines.empty() || lines[0] != "WGKEY v1") throw ParseError(path, 1, "expected header: WGKEY v1");
    KeyFile key;
    std::size_t idx = 1;
    auto field_after = [&](const std::string& line, const std::string& tag,
                           std::size_t lineno) -> std::optional<std::string> {
        if (line.rfind(tag, 0) != 0) return std::nullopt;
        (void)lineno;
        return line.substr(tag.size());
    };
    // parameter line: q=.. m=2 n=.. r=..
    {
        if (idx >= lines.size()) throw ParseError(path, idx + 1, "missing parameter line");
        std::istringstream ps(lines[idx]);
        std::string tok;
        int m = 0;
        while (ps >> tok) {
            if (tok.rfind("q=", 0) == 0)
                key.q = std::stoi(tok.substr(2));
            else if (tok.rfind("m=", 0) == 0)
                m = std::stoi(tok.substr(2));
            else if (tok.rfind("n=", 0) == 0)
                key.n = std::stoi(tok.substr(2));
            else if (tok.rfind("r=", 0) == 0)
                key.r = std::stoi(tok.substr(2));
            else
                throw ParseError(path, idx + 1, "unknown parameter: " + tok);
        }
        if (m != 2) throw ParseError(path, idx + 1, "only m=2 is supported");
        if (key.q < 2 || key.n < 1 || key.r < 1) throw ParseError(path, idx + 1, "bad parameters");
        ++idx;
    }
    const long long q2 = static_cast<long long>(key.q) * key.q;
    bool seen_G = false;
    while (idx < lines.size()) {
        const std::string& l = lines[idx];
        if (l.empty()) {
            ++idx;
            continue;
        }
        if (auto v = field_after(l, "modulus.base=", idx + 1)) {
            key.modulus_base = detail_io::to_elems(detail_io::parse_ints(*v, path, idx + 1), key.q, path, idx + 1);
            ++idx;
        } else if (auto v2 = field_after(l, "modulus.ext=", idx + 1)) {
            key.modulus_ext = detail_io::to_elems(detail_io::parse_ints(*v2, path, idx + 1), key.q, path, idx + 1);
            ++idx;
        } else if (auto v3 = field_after(l, "secret.x=", idx + 1)) {
            auto x = detail_io::to_elems(detail_io::parse_ints(*v3, path, idx + 1), q2, path, idx + 1);
            if (static_cast<int>(x.size()) != key.n) throw ParseError(path, idx + 1, "secret.x length != n");
            key.secret_x = std::move(x);
            ++idx;
        } else if (auto v4 = field_after(l, "secret.gamma=", idx + 1)) {
            auto g = detail_io::to_elems(detail_io::parse_ints(*v4, path, idx + 1), q2, path, idx + 1);
            if (static_cast<int>(g.size()) != key.r + 1) throw ParseError(path, idx + 1, "secret.gamma length != r+1");
            key.secret_gamma = Poly(std::vector<elem>(g.begin(), g.end()));
            ++idx;
        } else if (l == "public.G=") {
            ++idx;
            long long q_level = 0;
            key.public_G = parse_matrix_block(lines, idx, q_level, path);
            if (q_level != key.q) throw ParseError(path, idx, "public matrix q_level != q");
            if (static_cast<int>(key.public_G.cols) != key.n) throw ParseError(path, idx, "public matrix width != n");
            seen_G = true;
        } else {
            throw ParseError(path, idx + 1, "unrecognized line");
        }
    }
    if (!seen_G) throw ParseError(path, lines.size(), "missing public.G= block");
    return key;
}

// Ciphertext / message files: "n t" header then the vector entries.
inline void write_vector_file(const std::string& path, const std::vector<elem>& v, std::size_t t) {
    std::ostringstream out;
    out << v.size() << " " << t << "\n";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << "\n";
    detail_io::atomic_write(path, out.str());
}

inline std::pair<std::vector<elem>, std::size_t> read_vector_file(const std::string& path, long long bound) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(std::move(l));
    if (lines.size() < 2) throw ParseError(path, 1, "expected header line and vector line");
    auto hdr = detail_io::parse_ints(lines[0], path, 1);
    if (hdr.size() != 2 || hdr[0] < 0 || hdr[1] < 0) throw ParseError(path, 1, "header must be: n t");
    auto v = detail_io::to_elems(detail_io::parse_ints(lines[1], path, 2), bound, path, 2);
    if (static_cast<long long>(v.size()) != hdr[0]) throw ParseError(path, 2, "vector length != n");
    return {std::move(v), static_cast<std::size_t>(hdr[1])};
}

inline std::string format_profile_csv(const std::vector<ProfileRow>& rows) {
    std::ostringstream out;
    out << "size,goppa_dim,random_dim\n";
    for (auto& r : rows) out << r.size << "," << r.goppa_dim << "," << r.random_dim << "\n";
    return out.str();
}

inline std::string format_transcript(const AttackTranscript& tr, const std::string& verdict) {
    std::ostringstream out;
    out << "{\n  \"stages\": [\n";
    for (std::size_t i = 0; i < tr.stages.size(); ++i) {
        const auto& s = tr.stages[i];
        out << "    {\"stage\": \"" << s.name << "\", \"detail\": \"" << s.detail << "\", \"ms\": " << s.millis << "}"
            << (i + 1 < tr.stages.size() ? ",\n" : "\n");
    }
    out << "  ],\n  \"verdict\": \"" << verdict << "\"\n}\n";
    return out.str();
}

} // namespace wg

#endif
