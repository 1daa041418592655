#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

namespace qlops::cfg {

// Insertion-ordered JSON keeps report output deterministic and lets the
// text format and the JSON rendering share one binder.
using Node = nlohmann::ordered_json;

// Parses the nested key-value text format into a Node tree.
//
//   section {            # comment
//     key value
//     flat_list [ 1 2  3 4 ]
//     nested { a 1  b 2 }
//   }
//
// Whitespace only separates tokens; every key takes exactly one value
// (scalar, list or block).  Values that read as numbers become numbers,
// `true`/`false` become booleans, everything else stays a string
// (durations such as `0.86us` are strings until a binder interprets
// them).
Node parse_text(std::string_view text, const std::string& origin);

// Dispatches on content: documents starting with '{' or '[' are JSON,
// anything else goes through parse_text.
Node parse_document(std::string_view text, const std::string& origin);

// Reads and parses a file (ParseError / IoError on failure).
Node load_document(const std::string& path);

} // namespace qlops::cfg
