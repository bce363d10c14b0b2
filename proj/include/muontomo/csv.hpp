#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"

namespace muontomo {

/// Shortest decimal that parses back to exactly `v`.
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
    return {buf, end};
}

/// Streams LF-terminated comma-separated rows into `<path>.tmp`; commit()
/// renames it onto `path`. An uncommitted writer removes its temp file.
class CsvWriter {
  public:
    CsvWriter(std::filesystem::path path, std::vector<std::string_view> header)
        : path_(std::move(path)), tmp_(path_), columns_(header.size()) {
        tmp_ += ".tmp";
        out_.open(tmp_, std::ios::binary | std::ios::trunc);
        if (!out_) throw IoError("cannot open " + tmp_.string() + " for writing");
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (k) buf_ += ',';
            buf_ += header[k];
        }
        buf_ += '\n';
    }

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    ~CsvWriter() {
        if (!committed_) {
            out_.close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }

    CsvWriter& field(std::string_view s) {
        sep();
        buf_ += s;
        return *this;
    }
    CsvWriter& field(double v) {
        sep();
        char tmp[64];
        auto [end, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
        buf_.append(tmp, end);
        return *this;
    }
    CsvWriter& field(std::int64_t v) {
        sep();
        char tmp[32];
        auto [end, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
        buf_.append(tmp, end);
        return *this;
    }
    CsvWriter& field(int v) { return field(static_cast<std::int64_t>(v)); }
    CsvWriter& field(bool v) { return field(std::string_view(v ? "true" : "false")); }

    void end_row() {
        if (in_row_ != columns_) {
            throw std::logic_error("csv row has " + std::to_string(in_row_) + " fields, expected " +
                                   std::to_string(columns_));
        }
        buf_ += '\n';
        in_row_ = 0;
        ++rows_;
        if (buf_.size() > (1u << 20)) flush();
    }

    std::size_t rows() const { return rows_; }

    void commit() {
        flush();
        out_.close();
        if (!out_) throw IoError("write failed: " + tmp_.string());
        std::error_code ec;
        std::filesystem::rename(tmp_, path_, ec);
        if (ec) {
            throw IoError("cannot rename " + tmp_.string() + " to " + path_.string() + ": " +
                          ec.message());
        }
        committed_ = true;
    }

  private:
    void sep() {
        if (in_row_++) buf_ += ',';
    }

    void flush() {
        out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
        if (!out_) throw IoError("write failed: " + tmp_.string());
        buf_.clear();
    }

    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    std::size_t columns_;
    std::size_t in_row_{0};
    std::size_t rows_{0};
    std::string buf_;
    bool committed_{false};
};

}  // namespace muontomo
