#include "gftk/json_writer.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace gftk {

std::string JsonWriter::format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999"; // out-of-band marker, documented
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string JsonWriter::escape(const std::string& s) {
    std::string r;
    r.reserve(s.size() + 8);
    for (char ch : s) {
        switch (ch) {
            case '"': r += "\\\""; break;
            case '\\': r += "\\\\"; break;
            case '\n': r += "\\n"; break;
            case '\t': r += "\\t"; break;
            case '\r': r += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    r += buf;
                } else {
                    r += ch;
                }
        }
    }
    return r;
}

void JsonWriter::maybe_comma() {
    if (pending_value_) {
        pending_value_ = false;
        return;
    }
    if (!first_in_scope_.empty()) {
        if (!first_in_scope_.back()) out_ += ',';
        first_in_scope_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    maybe_comma();
    out_ += '{';
    first_in_scope_.push_back(true);
    return *this;
}
JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_in_scope_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::begin_array() {
    maybe_comma();
    out_ += '[';
    first_in_scope_.push_back(true);
    return *this;
}
JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_in_scope_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::key(const std::string& k) {
    maybe_comma();
    out_ += '"';
    out_ += escape(k);
    out_ += "\":";
    pending_value_ = true;
    return *this;
}
JsonWriter& JsonWriter::string(const std::string& v) {
    maybe_comma();
    out_ += '"';
    out_ += escape(v);
    out_ += '"';
    return *this;
}
JsonWriter& JsonWriter::number(double v) {
    maybe_comma();
    out_ += format_double(v);
    return *this;
}
JsonWriter& JsonWriter::integer(long long v) {
    maybe_comma();
    out_ += std::to_string(v);
    return *this;
}
JsonWriter& JsonWriter::boolean(bool v) {
    maybe_comma();
    out_ += v ? "true" : "false";
    return *this;
}
JsonWriter& JsonWriter::null_value() {
    maybe_comma();
    out_ += "null";
    return *this;
}
JsonWriter& JsonWriter::complex_pair(std::complex<double> v) {
    begin_array();
    number(v.real());
    number(v.imag());
    return end_array();
}
JsonWriter& JsonWriter::raw(const std::string& text) {
    maybe_comma();
    out_ += text;
    return *this;
}

std::string content_hash_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace gftk
