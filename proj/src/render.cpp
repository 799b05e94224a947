#include "simctx/render.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace simctx {

namespace {

class TextGrid {
 public:
  void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string str(const std::string& indent = "") const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::ostringstream os;
    for (const auto& r : rows_) {
      std::string line = indent;
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c > 0) line += "  ";
        line += std::string(width[c] - r[c].size(), ' ') + r[c];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << '\n';
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string box(const SimpDist& p, int dim, int idx, const RenderOptions& options) {
  const int d = p.target().d;
  TextGrid g;
  std::vector<std::string> head{""};
  for (int b = 0; b < d; ++b) head.push_back(std::to_string(b));
  g.add_row(head);
  for (int a = 0; a < d; ++a) {
    std::vector<std::string> row{std::to_string(a)};
    for (int b = 0; b < d; ++b) {
      row.push_back(format_scalar(p.weight(dim, idx, {a, b}), options));
    }
    g.add_row(row);
  }
  return g.str("  ");
}

}  // namespace

std::string format_scalar(const Scalar& s, const RenderOptions& options) {
  std::string out = s.to_string();
  if (options.show_float && s.kind() != SemiringKind::Boolean && denominator(s.value()) != 1) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", s.to_double());
    if (out != buf) out += " (" + std::string(buf) + ")";
  }
  return out;
}

std::string render_flat(const OutcomeDist& p, int d, const RenderOptions& options) {
  std::string s = "{";
  for (const auto& [y, w] : p) {
    if (s.size() > 1) s += ", ";
    s += (y.empty() ? std::string("()") : outcome_to_string(y, d)) + ":" + format_scalar(w, options);
  }
  return s + "}";
}

std::string render_box_table(const SimpDist& p, const RenderOptions& options) {
  const SSet2& x = p.space();
  const int d = p.target().d;
  std::ostringstream os;

  if (p.target().kind == TargetKind::Nerve && x.num_triangles() > 0) {
    std::vector<int> rows, cols;
    std::set<std::pair<int, int>> cells;
    for (const Triangle& t : x.triangles()) {
      if (std::find(rows.begin(), rows.end(), t.d2) == rows.end()) rows.push_back(t.d2);
      if (std::find(cols.begin(), cols.end(), t.d0) == cols.end()) cols.push_back(t.d0);
      cells.emplace(t.d2, t.d0);
    }
    bool disjoint = std::none_of(rows.begin(), rows.end(), [&](int e) { return std::find(cols.begin(), cols.end(), e) != cols.end(); });
    if (rows.size() * cols.size() == x.num_triangles() && cells.size() == x.num_triangles() && disjoint &&
        x.num_triangles() > 1) {
      TextGrid g;
      std::vector<std::string> head{"", ""};
      for (int c : cols) {
        for (int b = 0; b < d; ++b) head.push_back(b == 0 ? x.name(1, c) : "");
      }
      g.add_row(head);
      std::vector<std::string> sub{"", ""};
      for (std::size_t c = 0; c < cols.size(); ++c) {
        for (int b = 0; b < d; ++b) sub.push_back(std::to_string(b));
      }
      g.add_row(sub);
      for (int r : rows) {
        for (int a = 0; a < d; ++a) {
          std::vector<std::string> line{a == 0 ? x.name(1, r) : "", std::to_string(a)};
          for (int c : cols) {
            int t = -1;
            for (std::size_t k = 0; k < x.num_triangles(); ++k) {
              if (x.triangle(static_cast<int>(k)).d2 == r && x.triangle(static_cast<int>(k)).d0 == c) t = static_cast<int>(k);
            }
            for (int b = 0; b < d; ++b) line.push_back(format_scalar(p.weight(2, t, {a, b}), options));
          }
          g.add_row(line);
        }
      }
      return g.str();
    }
  }

  for (int dim = 2; dim >= 0; --dim) {
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      const int len = p.target().outcome_length(dim);
      if (len == 0) continue;
      const auto& q = p.at(dim, static_cast<int>(idx));
      if (len == 2) {
        os << x.name(dim, static_cast<int>(idx)) << ":\n" << box(p, dim, static_cast<int>(idx), options);
      } else {
        os << x.name(dim, static_cast<int>(idx)) << ": " << render_flat(q, d, options) << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace simctx
