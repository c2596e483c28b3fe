#include "scorelint/report.hpp"

#include <algorithm>
#include <tuple>

#include <json.hpp>

#include "scorelint/error.hpp"

namespace scorelint {

namespace {

using json = nlohmann::ordered_json;

json rational_json(const Rational& r) { return json{{"num", r.numerator()}, {"den", r.denominator()}}; }

Rational rational_from(const json& j) { return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

Stage stage_from(const std::string& s) {
  if (s == "individual") return Stage::Individual;
  if (s == "contextual") return Stage::Contextual;
  throw Error(ErrorKind::Parse, "unknown stage '" + s + "'");
}

Severity severity_from(const std::string& s) {
  if (s == "error") return Severity::Error;
  if (s == "warning") return Severity::Warning;
  throw Error(ErrorKind::Parse, "unknown severity '" + s + "'");
}

}  // namespace

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.location.file, a.location.measure_index, a.location.onset, a.code) <
           std::tie(b.location.file, b.location.measure_index, b.location.onset, b.code);
  });
}

std::string render_text(std::vector<Diagnostic> diags) {
  sort_diagnostics(diags);
  std::string out;
  for (const Diagnostic& d : diags) {
    out += d.location.file + ":" + d.location.measure + ":" + std::to_string(d.location.voice) + ": " +
           std::string(to_string(d.severity)) + " " + d.code + " — " + d.message + "\n";
  }
  return out;
}

std::string render_json(const JsonReport& report) {
  std::vector<Diagnostic> diags = report.diagnostics;
  sort_diagnostics(diags);
  json list = json::array();
  for (const Diagnostic& d : diags) {
    json data = json::object();
    for (const auto& [key, value] : d.data) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>) {
              data[key] = rational_json(v);
            } else {
              data[key] = v;
            }
          },
          value);
    }
    list.push_back(json{{"code", d.code},
                        {"stage", to_string(d.stage)},
                        {"severity", to_string(d.severity)},
                        {"part", d.location.part},
                        {"measure", d.location.measure},
                        {"measure_index", d.location.measure_index},
                        {"voice", d.location.voice},
                        {"onset", rational_json(d.location.onset)},
                        {"message", d.message},
                        {"data", std::move(data)}});
  }
  json doc{{"schema_version", 1}, {"file", report.file}, {"diagnostics", std::move(list)}};
  if (report.contextual_skipped) doc["contextual_skipped"] = true;
  return doc.dump();
}

JsonReport parse_json_report(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("schema_version").get<int>() != 1) throw Error(ErrorKind::Parse, "unsupported report schema version");
    JsonReport report;
    report.file = doc.at("file").get<std::string>();
    report.contextual_skipped = doc.value("contextual_skipped", false);
    for (const json& j : doc.at("diagnostics")) {
      Diagnostic d;
      d.code = j.at("code").get<std::string>();
      d.stage = stage_from(j.at("stage").get<std::string>());
      d.severity = severity_from(j.at("severity").get<std::string>());
      d.location.file = report.file;
      d.location.part = j.at("part").get<std::string>();
      d.location.measure = j.at("measure").get<std::string>();
      d.location.measure_index = j.at("measure_index").get<std::size_t>();
      d.location.voice = j.at("voice").get<int>();
      d.location.onset = rational_from(j.at("onset"));
      d.message = j.at("message").get<std::string>();
      for (const auto& [key, value] : j.at("data").items()) {
        if (value.is_object()) {
          d.data.emplace_back(key, rational_from(value));
        } else if (value.is_number_integer()) {
          d.data.emplace_back(key, value.get<std::int64_t>());
        } else {
          d.data.emplace_back(key, value.get<std::string>());
        }
      }
      report.diagnostics.push_back(std::move(d));
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed report: ") + e.what());
  }
}

}  // namespace scorelint
