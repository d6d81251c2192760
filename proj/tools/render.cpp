#include "render.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace rainbow::cli {

namespace {

std::string coeff_text(const QPoly& c, std::optional<long> q) { return q ? c.eval(*q).get_str() : c.to_string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return r + '"';
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + s + "'");
}

void print_decomposition(const std::string& kind, const Decomposition& d, Format fmt, std::optional<long> q,
                         std::ostream& out) {
  switch (fmt) {
    case Format::Json: {
      nlohmann::ordered_json j;
      j["kind"] = kind;
      j["basis"] = d.basis;
      j["q"] = q ? nlohmann::ordered_json(*q) : nlohmann::ordered_json(nullptr);
      j["terms"] = nlohmann::ordered_json::array();
      for (const auto& [label, c] : d.terms) j["terms"].push_back({{"label", label_to_string(label)}, {"coeff", coeff_text(c, q)}});
      out << j.dump(2) << '\n';
      return;
    }
    case Format::Csv:
      out << "label,coeff\n";
      for (const auto& [label, c] : d.terms) out << csv_field(label_to_string(label)) << ',' << csv_field(coeff_text(c, q)) << '\n';
      return;
    case Format::Text: {
      std::size_t w = 5;
      for (const auto& [label, c] : d.terms) w = std::max(w, label_to_string(label).size());
      out << kind << " in the " << d.basis << " basis, " << d.terms.size() << " terms\n";
      for (const auto& [label, c] : d.terms) {
        const std::string l = label_to_string(label);
        out << "  " << l << std::string(w - l.size() + 2, ' ') << coeff_text(c, q) << '\n';
      }
      return;
    }
  }
}

void print_poly(const QPoly& p, Format fmt, std::optional<long> q, std::ostream& out) {
  const std::string s = coeff_text(p, q);
  if (fmt == Format::Json) {
    nlohmann::ordered_json j;
    j["poly"] = s;
    out << j.dump() << '\n';
  } else {
    out << s << '\n';
  }
}

std::string arc_diagram(const std::vector<Arc>& arcs, const GroundSet& ground, bool above) {
  constexpr std::size_t kGap = 4;
  std::vector<std::size_t> col(ground.size());
  std::string nodes;
  for (std::size_t t = 0; t < ground.size(); ++t) {
    const std::string name = std::to_string(ground[t]);
    col[t] = t * kGap;
    nodes.resize(col[t], ' ');
    nodes += name;
  }
  // Short arcs sit nearest the nodes; arcs whose closed spans meet take distinct rows.
  std::vector<std::pair<std::size_t, std::size_t>> span;
  for (const Arc& a : arcs) span.emplace_back(ground.index_of(a.i), ground.index_of(a.j));
  std::vector<std::size_t> order(span.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return span[x].second - span[x].first < span[y].second - span[y].first;
  });
  std::vector<std::size_t> level(span.size(), 0);
  std::size_t depth = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [lo, hi] = span[order[k]];
    std::size_t lv = 1;
    for (std::size_t t = 0; t < k; ++t) {
      const auto [l2, h2] = span[order[t]];
      if (l2 <= hi && lo <= h2) lv = std::max(lv, level[order[t]] + 1);
    }
    level[order[k]] = lv;
    depth = std::max(depth, lv);
  }
  const std::size_t width = nodes.size();
  std::vector<std::string> rows(depth, std::string(width, ' '));
  for (std::size_t k = 0; k < span.size(); ++k) {
    const std::size_t a = col[span[k].first], b = col[span[k].second];
    for (std::size_t r = 0; r + 1 < level[k]; ++r)
      for (std::size_t x : {a, b})
        if (rows[r][x] == ' ' || rows[r][x] == '-') rows[r][x] = '|';
    std::string& row = rows[level[k] - 1];
    for (std::size_t x = a + 1; x < b; ++x)
      if (row[x] == ' ') row[x] = '-';
    row[a] = row[b] = '+';
  }
  for (std::string& r : rows) r.erase(r.find_last_not_of(' ') + 1);
  std::string outp;
  if (above) {
    for (std::size_t r = depth; r-- > 0;) outp += rows[r] + '\n';
    outp += nodes + '\n';
  } else {
    outp += nodes + '\n';
    for (const std::string& r : rows) outp += r + '\n';
  }
  return outp;
}

}  // namespace rainbow::cli
