#include "stda/render.hpp"

#include <fstream>
#include <sstream>

namespace stda {

namespace {

std::string window_comment(const SpacetimeGrid& g) {
    std::ostringstream out;
    out << "# window " << g.m0() << " " << g.m1() << " " << g.n0() << " " << g.n1() << "\n";
    return out.str();
}

} // namespace

std::string render_pbm(const SpacetimeGrid& grid) {
    if (grid.p() != 2) throw UsageError("PBM output is for p = 2; use pgm");
    std::ostringstream out;
    out << "P1\n" << window_comment(grid);
    out << grid.width() << " " << grid.height() << "\n";
    for (long long n = grid.n1(); n >= grid.n0(); --n) {
        int col = 0;
        for (long long m = grid.m0(); m <= grid.m1(); ++m) {
            out << (grid.at(m, n) ? '1' : '0');
            if (++col == 64) {
                out << "\n";
                col = 0;
            }
        }
        if (col != 0) out << "\n";
    }
    return out.str();
}

std::string render_pgm(const SpacetimeGrid& grid) {
    const int p = grid.p();
    std::ostringstream out;
    out << "P2\n" << window_comment(grid);
    out << grid.width() << " " << grid.height() << "\n255\n";
    for (long long n = grid.n1(); n >= grid.n0(); --n) {
        int col = 0;
        for (long long m = grid.m0(); m <= grid.m1(); ++m) {
            int v = grid.at(m, n);
            int gray = 255 * (p - 1 - v) / (p - 1);
            out << gray;
            if (++col == 16) {
                out << "\n";
                col = 0;
            } else {
                out << " ";
            }
        }
        if (col != 0) out << "\n";
    }
    return out.str();
}

namespace {

struct PnmHeader {
    std::string magic;
    long long m0 = 0, m1 = -1, n0 = 0, n1 = -1;
    long long width = 0, height = 0;
    long long maxval = 1;
    size_t pos = 0;
};

PnmHeader parse_header(const std::string& text, bool with_maxval) {
    PnmHeader h;
    std::istringstream in(text);
    in >> h.magic;
    std::string tok;
    std::vector<long long> numbers;
    bool have_window = false;
    while (numbers.size() < (with_maxval ? 3u : 2u) && in >> tok) {
        if (tok == "#") {
            std::string word;
            in >> word;
            if (word == "window") {
                in >> h.m0 >> h.m1 >> h.n0 >> h.n1;
                have_window = true;
            } else {
                std::string rest;
                std::getline(in, rest);
            }
            continue;
        }
        numbers.push_back(std::stoll(tok));
    }
    h.width = numbers.at(0);
    h.height = numbers.at(1);
    if (with_maxval) h.maxval = numbers.at(2);
    if (!have_window) {
        h.m0 = 0;
        h.m1 = h.width - 1;
        h.n0 = 0;
        h.n1 = h.height - 1;
    }
    h.pos = static_cast<size_t>(in.tellg());
    return h;
}

} // namespace

SpacetimeGrid parse_pbm(const std::string& text) {
    PnmHeader h = parse_header(text, false);
    if (h.magic != "P1") throw UsageError("expected a P1 PBM file");
    SpacetimeGrid grid(FieldPrime(2), h.m0, h.m1, h.n0, h.n1);
    long long n = h.n1, m = h.m0;
    for (size_t i = h.pos; i < text.size(); ++i) {
        char c = text[i];
        if (c == '0' || c == '1') {
            if (n < h.n0) throw UsageError("PBM payload longer than the header promises");
            grid.set(m, n, static_cast<Fp>(c - '0'));
            if (++m > h.m1) {
                m = h.m0;
                --n;
            }
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw UsageError("unexpected character in PBM payload");
        }
    }
    if (n != h.n0 - 1) throw UsageError("PBM payload shorter than the header promises");
    return grid;
}

SpacetimeGrid parse_pgm(const std::string& text, int p) {
    PnmHeader h = parse_header(text, true);
    if (h.magic != "P2") throw UsageError("expected a P2 PGM file");
    if (h.maxval != 255) throw UsageError("expected maxval 255");
    SpacetimeGrid grid(FieldPrime(p), h.m0, h.m1, h.n0, h.n1);
    std::istringstream in(text.substr(h.pos));
    long long gray = 0;
    for (long long n = h.n1; n >= h.n0; --n) {
        for (long long m = h.m0; m <= h.m1; ++m) {
            if (!(in >> gray)) throw UsageError("PGM payload shorter than the header promises");
            long long v = p - 1 - (gray * (p - 1) + 127) / 255;
            if (v < 0 || v >= p) throw UsageError("PGM gray level out of range");
            grid.set(m, n, static_cast<Fp>(v));
        }
    }
    return grid;
}

std::string render_to_file(const SpacetimeGrid& grid, const std::string& path,
                           const std::string& format) {
    std::string payload;
    if (format == "pbm") {
        payload = render_pbm(grid);
    } else if (format == "pgm") {
        payload = render_pgm(grid);
    } else {
        throw UsageError("render format must be pbm or pgm");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write image file: " + path);
    out << payload;
    return path;
}

} // namespace stda
