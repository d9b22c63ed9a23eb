// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace rotbloch {

/// A result table plus the metadata needed to reproduce it. Missing cells are empty optionals.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::string> warnings;
};

/// Shortest decimal text that parses back to exactly @p value.
[[nodiscard]] std::string format_number(double value);

/**
 * CSV with a `#`-prefixed header block:
 *
 *     # key = value          (one line per metadata entry)
 *     # warning: text        (one line per warning)
 *     col1,col2,...
 *     v11,v12,...            (missing cells are empty)
 */
void write_csv(std::ostream& out, const Table& table);

/// {"metadata": {...}, "warnings": [...], "columns": [...], "rows": [[...]]}; missing cells are null.
void write_json(std::ostream& out, const Table& table);

}  // namespace rotbloch
