#ifndef GFTK_JSON_WRITER_HPP
#define GFTK_JSON_WRITER_HPP

#include <complex>
#include <string>
#include <vector>

namespace gftk {

// Minimal ordered JSON emitter with fixed float formatting (%.17g), so that
// identical inputs produce byte-identical outputs.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& string(const std::string& v);
    JsonWriter& number(double v);
    JsonWriter& integer(long long v);
    JsonWriter& boolean(bool v);
    JsonWriter& null_value();
    JsonWriter& complex_pair(std::complex<double> v); // [re, im]
    JsonWriter& raw(const std::string& text);         // pre-rendered JSON fragment

    const std::string& str() const { return out_; }

    static std::string escape(const std::string& s);
    static std::string format_double(double v);

  private:
    void maybe_comma();
    std::string out_;
    std::vector<bool> first_in_scope_;
    bool pending_value_ = false; // a key was written, next token is its value
};

// FNV-1a 64-bit; used to stamp outputs with a hash of the request
std::string content_hash_hex(const std::string& data);

} // namespace gftk

#endif
