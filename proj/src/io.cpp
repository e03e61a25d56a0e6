#include "serwalk/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace serwalk {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw InvalidArgument("malformed number '" + s + "'");
  return v;
}

std::uint64_t parse_index(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw InvalidArgument("malformed index '" + s + "'");
  return v;
}

// Exact when the text is exactly how the dyadic nearest to it prints.
std::optional<Dyadic> exact_value(const std::string& s, double v) {
  try {
    auto d = Dyadic::from_double(v);
    if (d && d->to_decimal() == s) return d;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

void close_phases(Walk& w, const std::vector<std::size_t>& ends, NormKind kind) {
  std::size_t begin = 0;
  for (std::size_t end : ends) {
    double bound = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double d = i == 0 ? norm(sub(w.at(0), w.origin()), kind) : w.distance_between(i - 1, i, kind);
      bound = std::max(bound, d);
    }
    w.end_phase_at(end, bound);
    begin = end;
  }
}

std::string sparse_object(const SparseVec& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [i, x] : v.entries()) {
    if (!first) out += ",";
    first = false;
    out += "\"" + std::to_string(i) + "\":" + x.to_string();
  }
  return out + "}";
}

SparseVec sparse_from_json(const ojson& obj) {
  if (!obj.is_object()) throw InvalidArgument("expected an object of coordinates");
  SparseVec v;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it.value().is_number()) throw InvalidArgument("coordinate values must be numbers");
    const std::uint64_t i = parse_index(it.key());
    if (i == 0) throw InvalidArgument("coordinates are 1-based");
    const auto d = Dyadic::from_double(it.value().get<double>());
    if (!d) throw InvalidArgument("coordinate " + it.key() + " is not representable");
    v.set(i, Scalar(*d));
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

// ---------------------------------------------------------------------------

void write_csv(const Walk& w, std::ostream& os) {
  if (w.is_sparse()) throw InvalidArgument("sparse walks are written as JSON lines");
  os << "index,phase";
  for (std::size_t c = 0; c < w.dim(); ++c) os << ",coord_" << c;
  os << "\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    os << (i + 1) << "," << (w.phase_of(i) + 1);
    if (w.mode() == Mode::exact) {
      const Point p = w.point(i);
      for (const auto& c : p.coords()) os << "," << c.to_string();
    } else {
      for (std::size_t c = 0; c < w.dim(); ++c) os << "," << format_double(w.coord(i, c));
    }
    os << "\n";
  }
}

Walk read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("empty trace");
  const auto header = split_csv(line);
  if (header.size() < 3 || header[0] != "index" || header[1] != "phase")
    throw InvalidArgument("trace header must be index,phase,coord_0,...");
  for (std::size_t c = 2; c < header.size(); ++c)
    if (header[c] != "coord_" + std::to_string(c - 2)) throw InvalidArgument("unexpected column " + header[c]);
  const std::size_t dim = header.size() - 2;

  std::vector<std::vector<std::string>> text;
  std::vector<std::vector<double>> vals;
  std::vector<std::size_t> phase;
  bool exact = true;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    auto cols = split_csv(line);
    if (cols.size() != dim + 2) throw InvalidArgument("row " + std::to_string(vals.size() + 1) + " has the wrong width");
    if (parse_index(cols[0]) != vals.size() + 1) throw InvalidArgument("indices must run 1, 2, ...");
    phase.push_back(parse_index(cols[1]));
    std::vector<double> row;
    for (std::size_t c = 0; c < dim; ++c) {
      row.push_back(parse_double(cols[c + 2]));
      exact = exact && exact_value(cols[c + 2], row.back()).has_value();
    }
    vals.push_back(std::move(row));
    text.emplace_back(cols.begin() + 2, cols.end());
  }

  Walk w = Walk::dense(dim, exact ? Mode::exact : Mode::floating);
  w.set_origin(Point::zeros(dim, exact ? Mode::exact : Mode::floating), false);
  w.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (exact) {
      std::vector<Scalar> c;
      for (std::size_t k = 0; k < dim; ++k) c.emplace_back(*exact_value(text[i][k], vals[i][k]));
      w.push_back(Point(std::move(c)));
    } else {
      w.push_back_real(vals[i].data());
    }
  }
  std::vector<std::size_t> ends;
  for (std::size_t i = 1; i <= phase.size(); ++i)
    if (i == phase.size() || phase[i] != phase[i - 1]) ends.push_back(i);
  close_phases(w, ends, NormKind::euclidean);
  return w;
}

void write_jsonl(const Walk& w, std::ostream& os) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    os << "{\"index\":" << (i + 1);
    if (w.is_sparse()) {
      os << ",\"entries\":" << sparse_object(w.sparse_at(i));
    } else {
      os << ",\"phase\":" << (w.phase_of(i) + 1) << ",\"coords\":[";
      const auto r = w.row_doubles(i);
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c) os << ",";
        if (w.mode() == Mode::exact)
          os << w.point(i)[c].to_string();
        else
          os << format_double(r[c]);
      }
      os << "]";
    }
    os << "}\n";
  }
}

Walk read_jsonl(std::istream& is) {
  std::string line;
  std::vector<ojson> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    try {
      rows.push_back(ojson::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed JSON line: ") + e.what());
    }
  }
  if (rows.empty()) throw InvalidArgument("empty trace");
  const bool sparse = rows.front().contains("entries");
  std::vector<std::size_t> ends;
  if (sparse) {
    Walk w = Walk::sparse();
    w.set_origin(SparseVec(), true);
    for (const auto& r : rows) {
      if (!r.contains("entries")) throw InvalidArgument("mixed sparse and dense rows");
      w.push_back(sparse_from_json(r.at("entries")));
      if (w.sparse_at(w.size() - 1).empty()) ends.push_back(w.size());
    }
    close_phases(w, ends, NormKind::sup);
    return w;
  }
  if (!rows.front().contains("coords")) throw InvalidArgument("rows need entries or coords");
  const std::size_t dim = rows.front().at("coords").size();
  if (dim == 0) throw InvalidArgument("empty coordinate list");
  Walk w = Walk::dense(dim, Mode::floating);
  w.set_origin(Point::zeros(dim, Mode::floating), false);
  std::vector<std::size_t> phase;
  std::vector<double> row(dim);
  for (const auto& r : rows) {
    const auto& c = r.at("coords");
    if (c.size() != dim) throw InvalidArgument("rows differ in dimension");
    for (std::size_t k = 0; k < dim; ++k) row[k] = c.at(k).get<double>();
    w.push_back_real(row.data());
    phase.push_back(r.value("phase", std::size_t{1}));
  }
  for (std::size_t i = 1; i <= phase.size(); ++i)
    if (i == phase.size() || phase[i] != phase[i - 1]) ends.push_back(i);
  close_phases(w, ends, NormKind::euclidean);
  return w;
}

Walk read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  try {
    if (ends_with(path, ".jsonl") || ends_with(path, ".json")) return read_jsonl(in);
    if (ends_with(path, ".csv")) return read_csv(in);
    const int c = in.peek();
    if (c == '{') return read_jsonl(in);
    return read_csv(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed trace: ") + e.what());
  }
}

void write_trace(const Walk& w, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  if (ends_with(path, ".csv"))
    write_csv(w, out);
  else
    write_jsonl(w, out);
}

PointSample read_sample(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<Point> pts;
  if (ends_with(path, ".json")) {
    try {
      const auto j = ojson::parse(text);
      for (const auto& p : j.at("points")) {
        std::vector<double> xs;
        for (const auto& x : p) xs.push_back(x.get<double>());
        pts.push_back(Point::real(std::move(xs)));
      }
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed sample: ") + e.what());
    }
  } else {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("empty sample");
    const auto header = split_csv(line);
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] != "index" && header[c] != "phase") cols.push_back(c);
    while (std::getline(in, line)) {
      if (line.empty() || line == "\r") continue;
      const auto row = split_csv(line);
      if (row.size() != header.size()) throw InvalidArgument("sample row has the wrong width");
      std::vector<double> xs;
      for (std::size_t c : cols) xs.push_back(parse_double(row[c]));
      pts.push_back(Point::real(std::move(xs)));
    }
  }
  if (pts.empty()) throw InvalidArgument("empty sample");
  for (const auto& p : pts)
    if (p.dim() != pts.front().dim() || p.dim() == 0) throw InvalidArgument("sample points differ in dimension");
  return PointSample(std::move(pts));
}

// ---------------------------------------------------------------------------

std::string family_json(const VectorFamily& fam) {
  std::string out = "{\"k\":" + std::to_string(fam.k) + ",\"dim\":" + std::to_string(fam.dim) + ",\"vectors\":[";
  for (std::size_t i = 0; i < fam.vectors.size(); ++i) out += (i ? "," : "") + sparse_object(fam.vectors[i]);
  return out + "]}\n";
}

VectorFamily family_from_json(const std::string& text) {
  try {
    const auto j = ojson::parse(text);
    VectorFamily fam;
    fam.k = j.at("k").get<int>();
    fam.dim = j.at("dim").get<std::size_t>();
    for (const auto& v : j.at("vectors")) fam.vectors.push_back(sparse_from_json(v));
    return fam;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed family: ") + e.what());
  }
}

std::string instance_json(const std::vector<SparseVec>& terms, NormKind kind) {
  std::string out = std::string("{\"norm\":\"") + (kind == NormKind::sup ? "sup" : "euclidean") + "\",\"terms\":[";
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? "," : "") + sparse_object(terms[i]);
  return out + "]}\n";
}

std::vector<SparseVec> instance_from_json(const std::string& text, NormKind* kind) {
  try {
    const auto j = ojson::parse(text);
    const std::string n = j.value("norm", std::string("sup"));
    if (n != "sup" && n != "euclidean") throw InvalidArgument("norm must be sup or euclidean");
    if (kind) *kind = n == "sup" ? NormKind::sup : NormKind::euclidean;
    std::vector<SparseVec> terms;
    for (const auto& t : j.at("terms")) terms.push_back(sparse_from_json(t));
    if (terms.empty()) throw InvalidArgument("instance has no terms");
    return terms;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed instance: ") + e.what());
  }
}

namespace {

ojson element_to_json(const Element& e) {
  if (const auto* p = std::get_if<Point>(&e)) {
    ojson a = ojson::array();
    for (const auto& c : p->coords()) a.push_back(c.to_double());
    return a;
  }
  ojson o = ojson::object();
  for (const auto& [i, x] : std::get<SparseVec>(e).entries()) o[std::to_string(i)] = x.to_double();
  return o;
}

}  // namespace

std::string element_json(const Element& e) { return element_to_json(e).dump(); }

std::string rearrange_report_json(const RearrangeResult& r, const std::string& extra_key,
                                  const std::string& extra_value) {
  ojson j;
  j["stages"] = r.epsilons.size();
  j["epsilons"] = r.epsilons;
  j["etas"] = r.schedule.etas;
  j["schedule_points"] = r.schedule.size();
  j["terms_used"] = r.tau.size();
  j["invariants_ok"] = r.invariants_ok;
  ojson recs = ojson::array();
  for (const auto& s : r.records) {
    ojson o;
    o["step"] = s.step;
    o["stage"] = s.stage;
    o["k_i"] = s.k;
    o["eps"] = s.eps;
    o["eta"] = s.eta;
    o["anchor"] = s.anchor;
    o["stage_end_error"] = s.stage_end_error;
    o["prefix_max_excursion"] = s.prefix_max_excursion;
    o["invariants_ok"] = s.invariants_ok;
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  if (!extra_key.empty()) j[extra_key] = extra_value;
  return j.dump(1) + "\n";
}

std::string estimate_report_json(const LimitEstimate& est, const EstimateVerdicts& verdicts) {
  ojson j;
  j["resolution"] = est.resolution;
  j["window"] = {est.window_start + 1, est.window_end};
  ojson pts = ojson::array();
  for (const auto& p : est.points.points) pts.push_back(element_to_json(p));
  j["points"] = std::move(pts);
  j["hit_counts"] = est.hit_counts;
  ojson v = ojson::object();
  for (const auto& [k, val] : verdicts.entries) v[k] = val;
  j["verdicts"] = std::move(v);
  return j.dump(1) + "\n";
}

}  // namespace serwalk
