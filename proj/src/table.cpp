// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/table.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <stdexcept>

namespace rotbloch {

std::string format_number(double value) {
    std::array<char, 64> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return {buffer.data(), end};
}

void write_csv(std::ostream& out, const Table& table) {
    for (const auto& [key, value] : table.metadata) out << "# " << key << " = " << value << '\n';
    for (const auto& warning : table.warnings) out << "# warning: " << warning << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (row[c]) out << format_number(*row[c]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    // ordered_json keeps metadata in insertion order so files diff cleanly.
    nlohmann::ordered_json doc;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) metadata[key] = value;
    doc["metadata"] = std::move(metadata);
    doc["warnings"] = table.warnings;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (cell) {
                cells.push_back(*cell);
            } else {
                cells.push_back(nullptr);
            }
        }
        rows.push_back(std::move(cells));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

}  // namespace rotbloch
