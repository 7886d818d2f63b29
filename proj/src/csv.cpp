#include "hypefin/csv.hpp"

#include <cstdio>

namespace hypefin::csv {

bool read_record(std::istream& in, std::vector<std::string>& fields, long& line) {
    fields.clear();
    int c = in.get();
    // skip blank lines
    while (c == '\n' || c == '\r') {
        if (c == '\n') ++line;
        c = in.get();
    }
    if (c == EOF) return false;

    std::string field;
    bool quoted = false;
    for (;;) {
        if (quoted) {
            if (c == EOF) break; // unterminated quote: accept what we have
            if (c == '"') {
                int next = in.get();
                if (next == '"') {
                    field += '"';
                } else {
                    quoted = false;
                    c = next;
                    continue;
                }
            } else {
                if (c == '\n') ++line;
                field += static_cast<char>(c);
            }
        } else {
            if (c == EOF || c == '\n') {
                if (c == '\n') ++line;
                break;
            }
            if (c == '\r') {
                c = in.get();
                continue;
            }
            if (c == '"' && field.empty()) {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else {
                field += static_cast<char>(c);
            }
        }
        c = in.get();
    }
    fields.push_back(std::move(field));
    return true;
}

void write_record(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") != std::string::npos) {
            out << '"';
            for (char ch : f) {
                if (ch == '"') out << '"';
                out << ch;
            }
            out << '"';
        } else {
            out << f;
        }
    }
    out << '\n';
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace hypefin::csv
