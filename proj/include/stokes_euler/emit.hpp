#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "report.hpp"
#include "svg.hpp"
#include "verify.hpp"

namespace stokes_euler {

enum class Format { Json, Text, SvgBundle };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  if (s == "svg-bundle") return Format::SvgBundle;
  fail(ErrorKind::InvalidArgument, "unknown format \"" + s + "\" (json, text, svg-bundle)");
}

namespace detail {
inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + p.string());
}
}  // namespace detail

/// One document in one of the output formats. json/text go to `path`, or to
/// stdout when it is empty or "-"; svg-bundle writes `path`/report.json, report.txt
/// and every SVG in `figures` (path defaults to the current directory).
inline void emit_document(const json_io::Json& j, const std::string& text, Format f, const std::string& path,
                          const std::map<std::string, std::string>& figures = {}, std::ostream& console = std::cout) {
  const std::string json_text = j.dump(2) + "\n";
  if (f == Format::SvgBundle) {
    const std::filesystem::path dir = path.empty() || path == "-" ? "." : path;
    std::filesystem::create_directories(dir);
    detail::write_file(dir / "report.json", json_text);
    detail::write_file(dir / "report.txt", text);
    for (const auto& [name, svg] : figures) detail::write_file(dir / name, svg);
    return;
  }
  const std::string& body = f == Format::Json ? json_text : text;
  if (path.empty() || path == "-")
    console << body;
  else
    detail::write_file(path, body);
}

inline std::map<std::string, std::string> report_figures(const VerifyReport& r, const VerifyArtifacts* art) {
  std::map<std::string, std::string> figs;
  const StokesResult* sr = art && art->stokes ? &*art->stokes : nullptr;
  figs["constellation.svg"] = svg::constellation(sr ? sr->values() : r.critical_values, sr);
  if (sr) figs["thimbles.svg"] = svg::thimbles(*sr);
  return figs;
}

inline void emit(const VerifyReport& r, Format f, const std::string& path, const VerifyArtifacts* art = nullptr,
                 std::ostream& console = std::cout) {
  emit_document(json_io::to_json(r), report_text(r), f, path, f == Format::SvgBundle ? report_figures(r, art) : std::map<std::string, std::string>{}, console);
}

}  // namespace stokes_euler
