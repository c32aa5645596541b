#include "mlab/catalog.hpp"
#include "mlab/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace mlab {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const Report& r) {
  Json j;
  j["group"] = r.group;
  j["p"] = r.p;
  j["n"] = r.n;
  j["method"] = r.method;
  j["multiplier"] = r.multiplier;
  j["t"] = r.t ? Json(*r.t) : Json(nullptr);
  j["status"] = r.status;
  j["assumed"] = r.assumed;
  j["trace"] = r.trace;
  j["millis"] = r.millis;
  return j;
}

}  // namespace

std::string emit_report(const std::vector<Report>& reports, const std::string& format) {
  std::ostringstream out;
  if (format == "jsonl") {
    for (const auto& r : reports) out << to_json(r).dump() << '\n';
    return out.str();
  }
  require(format == "table", ErrorCode::invalid_argument,
          "unknown report format '" + format + "' (table or jsonl)");
  const std::vector<std::string> head{"group", "p", "n", "method", "multiplier", "t", "status", "assumed", "millis"};
  std::vector<std::vector<std::string>> rows{head};
  for (const auto& r : reports)
    rows.push_back({r.group, std::to_string(r.p), std::to_string(r.n), r.method, r.multiplier,
                    r.t ? std::to_string(*r.t) : "-", r.status, std::to_string(r.assumed.size()),
                    std::to_string(r.millis)});
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

std::vector<Report> parse_jsonl_reports(const std::string& text) {
  std::vector<Report> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
      Report r;
      r.group = j.at("group").get<std::string>();
      r.p = j.at("p").get<std::uint32_t>();
      r.n = j.at("n").get<int>();
      r.method = j.at("method").get<std::string>();
      r.multiplier = j.at("multiplier").get<std::string>();
      if (!j.at("t").is_null()) r.t = j.at("t").get<int>();
      r.status = j.at("status").get<std::string>();
      r.assumed = j.at("assumed").get<std::vector<std::string>>();
      r.trace = j.at("trace").get<std::vector<std::string>>();
      r.millis = j.at("millis").get<long long>();
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, std::string("bad report record: ") + e.what());
    }
  }
  return out;
}

}  // namespace mlab
