#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace liouville {

/// 17 significant digits: enough to round-trip any double exactly, and the
/// same text for the same bits on every run.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void append_json_escaped(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
}

/// Streaming JSON writer with insertion-ordered keys.  Numbers are printed
/// with fmt17 (non-finite values become null), so identical inputs produce
/// byte-identical documents.
class JsonWriter {
public:
    JsonWriter& begin_object() {
        prefix();
        out_ += '{';
        first_.push_back(true);
        return *this;
    }
    JsonWriter& end_object() {
        out_ += '}';
        first_.pop_back();
        return *this;
    }
    JsonWriter& begin_array() {
        prefix();
        out_ += '[';
        first_.push_back(true);
        return *this;
    }
    JsonWriter& end_array() {
        out_ += ']';
        first_.pop_back();
        return *this;
    }
    JsonWriter& key(std::string_view name) {
        separate();
        out_ += '"';
        append_json_escaped(out_, name);
        out_ += "\":";
        pending_key_ = true;
        return *this;
    }
    JsonWriter& value(double x) {
        prefix();
        out_ += std::isfinite(x) ? fmt17(x) : "null";
        return *this;
    }
    JsonWriter& value(int x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(unsigned x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(long long x) {
        prefix();
        out_ += std::to_string(x);
        return *this;
    }
    JsonWriter& value(std::string_view s) {
        prefix();
        out_ += '"';
        append_json_escaped(out_, s);
        out_ += '"';
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(bool b) {
        prefix();
        out_ += b ? "true" : "false";
        return *this;
    }
    JsonWriter& null() {
        prefix();
        out_ += "null";
        return *this;
    }

    const std::string& str() const { return out_; }

private:
    void separate() {
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
        }
    }
    void prefix() {
        if (pending_key_)
            pending_key_ = false;
        else
            separate();
    }

    std::string out_;
    std::vector<bool> first_;
    bool pending_key_ = false;
};

/// Plot-ready CSV with a fixed column set; numbers use fmt17.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& columns) : columns_(columns.size()) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ += ',';
            out_ += columns[i];
        }
        out_ += '\n';
    }

    void row(std::span<const double> values) {
        if (values.size() != columns_)
            throw std::invalid_argument("CsvWriter: row width does not match the header");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ += ',';
            out_ += fmt17(values[i]);
        }
        out_ += '\n';
    }

    const std::string& str() const { return out_; }

private:
    std::size_t columns_;
    std::string out_;
};

/// Write-to-temp then rename, so readers never observe a half-written file.
inline void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write_file: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("atomic_write_file: short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw std::runtime_error("atomic_write_file: rename to " + path.string() + " failed: " +
                                 ec.message());
}

} // namespace liouville
