#include "cachemodel/profile_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cachemodel/format.hpp"

namespace cachemodel {

namespace {

std::string hex_addr(std::uint64_t addr) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(addr));
    return buf;
}

void write_hist_section(const Histogram1D& h, std::ostream& out) {
    out << "cold " << fmt_count(h.cold()) << '\n';
    for (std::size_t d = 0; d <= h.cap(); ++d)
        if (h.at(d) != 0.0) out << d << ' ' << fmt_count(h.at(d)) << '\n';
}

void write_table_section(const Table2D& t, std::ostream& out) {
    for (std::size_t r = 0; r <= t.cap(); ++r) {
        const auto& row = t.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0.0) out << r << ' ' << c << ' ' << fmt_count(row[c]) << '\n';
    }
}

void write_aad_section(const AddressHistogram& a, std::ostream& out) {
    for (const auto& [addr, cnt] : a.entries())
        out << hex_addr(addr) << ' ' << fmt_count(cnt) << '\n';
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            return true;
        }
        return false;
    }
    std::size_t lineno() const { return lineno_; }

private:
    std::istream& in_;
    std::size_t lineno_ = 0;
};

double parse_count(const std::string& tok, std::size_t lineno) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(lineno, "bad count '" + tok + "'");
    }
    if (pos != tok.size() || v < 0.0) throw ParseError(lineno, "bad count '" + tok + "'");
    return v;
}

std::uint64_t parse_u64_or_throw(const std::string& tok, std::size_t lineno, int base = 10) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        if (tok.empty() || tok[0] == '-' || tok[0] == '+') throw std::invalid_argument(tok);
        v = std::stoull(tok, &pos, base);
    } catch (const std::exception&) {
        throw ParseError(lineno, "bad integer '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(lineno, "bad integer '" + tok + "'");
    return v;
}

}  // namespace

void write_profile(const CoreProfile& p, std::ostream& out) {
    out << "coreprofile 1\n";
    out << "core " << p.core << '\n';
    out << "l1 " << p.l1.size << ' ' << p.l1.associativity << ' ' << p.l1.line_size << '\n';
    out << "cap " << p.cap << '\n';
    out << "l1_access_total " << fmt_count(p.l1_access_total) << '\n';
    out << "l2_access_total " << fmt_count(p.l2_access_total) << '\n';
    out << "[l1_rdh]\n";
    write_hist_section(p.l1_rdh, out);
    out << "[rst]\n";
    write_table_section(p.rst, out);
    out << "[hit_rdh]\n";
    write_table_section(p.hit_rdh, out);
    out << "[l2_aad]\n";
    write_aad_section(p.l2_aad, out);
    out << "[l1_aad]\n";
    write_aad_section(p.l1_aad, out);
    out << "[l1_waad]\n";
    write_aad_section(p.l1_waad, out);
    out << "end\n";
}

void write_profile(const CoreProfile& p, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_profile(p, out);
}

CoreProfile read_profile(std::istream& in) {
    LineReader reader(in);
    std::string line;

    auto expect_kv = [&](const std::string& key) -> std::string {
        if (!reader.next(line)) throw ParseError(reader.lineno(), "unexpected end of profile");
        std::istringstream ss(line);
        std::string k, v, rest;
        ss >> k;
        if (k != key) throw ParseError(reader.lineno(), "expected '" + key + "', got '" + k + "'");
        std::getline(ss, v);
        const std::size_t b = v.find_first_not_of(' ');
        return b == std::string::npos ? "" : v.substr(b);
    };

    if (!reader.next(line) || line != "coreprofile 1")
        throw ParseError(reader.lineno(), "expected 'coreprofile 1' header");
    const auto core = parse_u64_or_throw(expect_kv("core"), reader.lineno());
    std::istringstream l1ss(expect_kv("l1"));
    std::string s1, s2, s3;
    if (!(l1ss >> s1 >> s2 >> s3)) throw ParseError(reader.lineno(), "bad l1 geometry");
    CacheGeometry l1{parse_u64_or_throw(s1, reader.lineno()),
                     static_cast<std::uint32_t>(parse_u64_or_throw(s2, reader.lineno())),
                     static_cast<std::uint32_t>(parse_u64_or_throw(s3, reader.lineno()))};
    l1.validate();
    const auto cap = parse_u64_or_throw(expect_kv("cap"), reader.lineno());
    const double l1_total = parse_count(expect_kv("l1_access_total"), reader.lineno());
    const double l2_total = parse_count(expect_kv("l2_access_total"), reader.lineno());

    CoreProfile p(cap);
    p.core = static_cast<std::uint32_t>(core);
    p.l1 = l1;
    p.l1_access_total = l1_total;
    p.l2_access_total = l2_total;

    enum class Section { None, L1Rdh, Rst, HitRdh, L2Aad, L1Aad, L1Waad };
    Section sec = Section::None;
    bool done = false;
    while (reader.next(line)) {
        if (line == "end") {
            done = true;
            break;
        }
        if (line[0] == '[') {
            if (line == "[l1_rdh]")
                sec = Section::L1Rdh;
            else if (line == "[rst]")
                sec = Section::Rst;
            else if (line == "[hit_rdh]")
                sec = Section::HitRdh;
            else if (line == "[l2_aad]")
                sec = Section::L2Aad;
            else if (line == "[l1_aad]")
                sec = Section::L1Aad;
            else if (line == "[l1_waad]")
                sec = Section::L1Waad;
            else
                throw ParseError(reader.lineno(), "unknown section " + line);
            continue;
        }
        std::istringstream ss(line);
        std::string a, b, c, rest;
        switch (sec) {
            case Section::None:
                throw ParseError(reader.lineno(), "data before first section");
            case Section::L1Rdh: {
                if (!(ss >> a >> b) || (ss >> rest))
                    throw ParseError(reader.lineno(), "expected '<distance> <count>'");
                if (a == "cold")
                    p.l1_rdh.set_cold(parse_count(b, reader.lineno()));
                else
                    p.l1_rdh.add(parse_u64_or_throw(a, reader.lineno()),
                                 parse_count(b, reader.lineno()));
                break;
            }
            case Section::Rst:
            case Section::HitRdh: {
                if (!(ss >> a >> b >> c) || (ss >> rest))
                    throw ParseError(reader.lineno(), "expected '<r> <s> <count>'");
                auto& table = sec == Section::Rst ? p.rst : p.hit_rdh;
                table.add(parse_u64_or_throw(a, reader.lineno()),
                          parse_u64_or_throw(b, reader.lineno()),
                          parse_count(c, reader.lineno()));
                break;
            }
            default: {
                if (!(ss >> a >> b) || (ss >> rest))
                    throw ParseError(reader.lineno(), "expected '<hexaddr> <count>'");
                auto& aad = sec == Section::L2Aad  ? p.l2_aad
                            : sec == Section::L1Aad ? p.l1_aad
                                                    : p.l1_waad;
                aad.add(parse_u64_or_throw(a, reader.lineno(), 16),
                        parse_count(b, reader.lineno()));
                break;
            }
        }
    }
    if (!done) throw ParseError(reader.lineno(), "missing 'end'");
    return p;
}

CoreProfile read_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile file " + path.string());
    return read_profile(in);
}

void write_histogram(const Histogram1D& h, std::ostream& out) {
    out << "histogram\n";
    out << "cap " << h.cap() << '\n';
    write_hist_section(h, out);
    out << "end\n";
}

Histogram1D read_histogram(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line) || line != "histogram")
        throw ParseError(reader.lineno(), "expected 'histogram' header");
    if (!reader.next(line)) throw ParseError(reader.lineno(), "missing cap");
    std::istringstream ss(line);
    std::string kw, tok;
    if (!(ss >> kw >> tok) || kw != "cap") throw ParseError(reader.lineno(), "missing cap");
    Histogram1D h(parse_u64_or_throw(tok, reader.lineno()));
    while (reader.next(line)) {
        if (line == "end") return h;
        std::istringstream es(line);
        std::string a, b, rest;
        if (!(es >> a >> b) || (es >> rest))
            throw ParseError(reader.lineno(), "expected '<distance> <count>'");
        if (a == "cold")
            h.set_cold(parse_count(b, reader.lineno()));
        else
            h.add(parse_u64_or_throw(a, reader.lineno()), parse_count(b, reader.lineno()));
    }
    throw ParseError(reader.lineno(), "missing 'end'");
}

void write_histogram(const Histogram1D& h, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_histogram(h, out);
}

Histogram1D read_histogram(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open histogram file " + path.string());
    return read_histogram(in);
}

}  // namespace cachemodel
