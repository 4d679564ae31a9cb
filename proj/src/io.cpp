#include "nnrank/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nnrank/errors.hpp"

namespace nnrank {

namespace {

using json = nlohmann::json;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

int parse_int(std::string_view tok, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InputError(what + ": expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

double parse_double(std::string_view tok, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw InputError(what + ": expected a finite number, got '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<int> parse_int_list(std::string_view tok, const std::string& what) {
  std::vector<int> out;
  while (true) {
    const auto comma = tok.find(',');
    out.push_back(parse_int(tok.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    tok = tok.substr(comma + 1);
  }
  return out;
}

Shape parse_header(const std::string& line) {
  const std::string what = "tensor header";
  int p = -1;
  std::vector<int> alpha, n;
  bool has_alpha = false, has_n = false;
  for (const std::string& tok : split_ws(line)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InputError(what + ": malformed field '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string_view val = std::string_view(tok).substr(eq + 1);
    if (key == "p") {
      p = parse_int(val, what);
    } else if (key == "alpha") {
      alpha = parse_int_list(val, what);
      has_alpha = true;
    } else if (key == "n") {
      n = parse_int_list(val, what);
      has_n = true;
    } else {
      throw InputError(what + ": unknown field '" + key + "'");
    }
  }
  if (p < 1 || !has_alpha || !has_n) {
    throw InputError(what + ": expected 'p=<int> alpha=<list> n=<list>'");
  }
  if (static_cast<int>(alpha.size()) != p || static_cast<int>(n.size()) != p) {
    throw InputError(what + ": alpha and n must list p values");
  }
  Shape shape;
  shape.alpha = std::move(alpha);
  shape.n = std::move(n);
  try {
    shape.validate();
  } catch (const InputError& e) {
    throw InputError(what + ": " + e.what());
  }
  return shape;
}

// Collects one value per orbit, rejecting conflicting duplicates.
class EntrySink {
 public:
  explicit EntrySink(Tensor* a) : a_(a) {}

  void add(std::vector<int> one_based, double v, const std::string& where) {
    const Shape& shape = a_->shape();
    const auto dims = shape.slot_dims();
    if (one_based.size() != dims.size()) {
      throw InputError(where + ": expected " + std::to_string(dims.size()) +
                       " indices and a value");
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (one_based[k] < 1 || one_based[k] > dims[k]) {
        throw InputError(where + ": index " + std::to_string(one_based[k]) +
                         " out of range 1.." + std::to_string(dims[k]) + " in slot " +
                         std::to_string(k + 1));
      }
      --one_based[k];
    }
    const std::vector<int> canon = canonical_index(shape, one_based);
    const std::size_t key = a_->offset(canon);
    const auto [it, inserted] = seen_.emplace(key, v);
    if (!inserted && it->second != v) {
      throw InputError(where + ": conflicting duplicate entry");
    }
    assign_orbit(*a_, canon, v);
  }

 private:
  Tensor* a_;
  std::map<std::size_t, double> seen_;
};

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Tensor parse_tensor(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<Tensor> a;
  std::optional<EntrySink> sink;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (!a) {
      a.emplace(parse_header(body));
      sink.emplace(&*a);
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    std::vector<std::string> toks = split_ws(body);
    if (toks.size() < 2) throw InputError(where + ": expected indices and a value");
    const double v = parse_double(toks.back(), where);
    toks.pop_back();
    std::vector<int> idx;
    idx.reserve(toks.size());
    for (const std::string& t : toks) idx.push_back(parse_int(t, where));
    sink->add(std::move(idx), v, where);
  }
  if (!a) throw InputError("tensor file: missing header line");
  return std::move(*a);
}

Tensor parse_tensor_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tensor(in);
}

void write_tensor(std::ostream& out, const Tensor& a) {
  const Shape& shape = a.shape();
  auto list = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  out << "p=" << shape.groups() << " alpha=" << list(shape.alpha) << " n=" << list(shape.n)
      << '\n';
  const auto entries = a.entries();
  for (std::size_t off = 0; off < entries.size(); ++off) {
    if (entries[off] == 0.0) continue;
    const std::vector<int> idx = a.index_of(off);
    if (canonical_index(shape, idx) != idx) continue;
    for (int i : idx) out << (i + 1) << ' ';
    out << format_value(entries[off]) << '\n';
  }
}

std::string serialize_tensor(const Tensor& a) {
  std::ostringstream out;
  write_tensor(out, a);
  return out.str();
}

Tensor tensor_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("tensor json: ") + e.what());
  }
  try {
    const int p = j.at("p").get<int>();
    Shape shape;
    shape.alpha = j.at("alpha").get<std::vector<int>>();
    shape.n = j.at("n").get<std::vector<int>>();
    if (p < 1 || static_cast<int>(shape.alpha.size()) != p ||
        static_cast<int>(shape.n.size()) != p) {
      throw InputError("tensor json: alpha and n must list p values");
    }
    shape.validate();
    Tensor a(shape);
    EntrySink sink(&a);
    std::size_t k = 0;
    for (const json& e : j.value("entries", json::array())) {
      const std::string where = "tensor json entry " + std::to_string(++k);
      if (!e.is_array() || e.size() < 2) throw InputError(where + ": expected [indices..., value]");
      std::vector<int> idx;
      for (std::size_t i = 0; i + 1 < e.size(); ++i) idx.push_back(e[i].get<int>());
      const double v = e.back().get<double>();
      if (!std::isfinite(v)) throw InputError(where + ": value is not finite");
      sink.add(std::move(idx), v, where);
    }
    return a;
  } catch (const json::exception& e) {
    throw InputError(std::string("tensor json: ") + e.what());
  }
}

std::string tensor_to_json(const Tensor& a) {
  const Shape& shape = a.shape();
  json j;
  j["p"] = shape.groups();
  j["alpha"] = shape.alpha;
  j["n"] = shape.n;
  json entries = json::array();
  const auto vals = a.entries();
  for (std::size_t off = 0; off < vals.size(); ++off) {
    if (vals[off] == 0.0) continue;
    const std::vector<int> idx = a.index_of(off);
    if (canonical_index(shape, idx) != idx) continue;
    json e = json::array();
    for (int i : idx) e.push_back(i + 1);
    e.push_back(vals[off]);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

Tensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tensor file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string head = trim(text);
  if (path.extension() == ".json" || (!head.empty() && head.front() == '{')) {
    return tensor_from_json(text);
  }
  return parse_tensor_text(text);
}

void write_tensor_file(const std::filesystem::path& path, const Tensor& a) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write tensor file " + path.string());
  if (path.extension() == ".json") {
    out << tensor_to_json(a) << '\n';
  } else {
    write_tensor(out, a);
  }
}

std::string format_duration(std::chrono::duration<double> d) {
  const double s = std::max(0.0, d.count());
  char buf[48];
  if (s < 60.0) {
    std::snprintf(buf, sizeof(buf), "%.2f", s);
  } else {
    const long total = static_cast<long>(std::lround(s));
    const long h = total / 3600, m = (total / 60) % 60, sec = total % 60;
    if (h == 0) {
      std::snprintf(buf, sizeof(buf), "%ld:%02ld", m, sec);
    } else {
      std::snprintf(buf, sizeof(buf), "%ld:%02ld:%02ld", h, m, sec);
    }
  }
  return buf;
}

double to_millis(std::chrono::duration<double> d) { return d.count() * 1e3; }

namespace {

json residuals_json(const Residuals& r) {
  return {{"primal_psd", r.primal_psd}, {"primal_nn", r.primal_nn}, {"affine", r.affine},
          {"dual", r.dual},             {"rel_gap", r.rel_gap}};
}

json solver_json(const SolverSummary& s) {
  return {{"status", to_string(s.status)},
          {"iters", s.iters},
          {"dim", s.dim},
          {"penalty", s.penalty},
          {"relaxed_value", s.relaxed_value},
          {"lifted", s.lifted},
          {"reduced", s.reduced},
          {"squared", s.squared},
          {"rank_one_certificate", s.rank_one_certificate},
          {"residuals", residuals_json(s.residuals)}};
}

json extraction_json(const ExtractionResult& r) {
  return {{"x_star", r.x_star},     {"lambda", r.lambda},   {"f_app", r.f_app},
          {"f_dnn", r.f_dnn},       {"sigma2", r.sigma2},   {"tight", r.tight},
          {"apperr", r.apperr},     {"apperrnm", r.apperrnm}, {"zero_tensor", r.zero_tensor}};
}

json time_json(std::chrono::duration<double> d) {
  return {{"hms", format_duration(d)}, {"ms", to_millis(d)}};
}

std::string blocks_text(const GroupedVector& x) {
  std::string s;
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += i ? " | " : "";
    for (std::size_t j = 0; j < x[i].size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%s%.4f", j ? " " : "", x[i][j]);
      s += buf;
    }
  }
  return s;
}

}  // namespace

std::string report_json(const ApproxReport& r, const Tensor& a, int indent) {
  const json j = {{"schema_version", kReportSchemaVersion},
                  {"kind", "approx"},
                  {"shape", {{"alpha", a.shape().alpha}, {"n", a.shape().n}}},
                  {"tensor_norm", hs_norm(a)},
                  {"lambda", r.lambda},
                  {"best_tensor_norm_sq", r.best_tensor_norm_sq},
                  {"extraction", extraction_json(r.extraction)},
                  {"solver", solver_json(r.solver)},
                  {"wall_time", time_json(r.wall_time)}};
  return j.dump(indent);
}

std::string report_json(const CopositivityVerdict& v, int indent) {
  const json j = {{"schema_version", kReportSchemaVersion},
                  {"kind", "copositivity"},
                  {"verdict", to_string(v.verdict)},
                  {"f_dnn", v.f_dnn},
                  {"f_app", v.f_app},
                  {"x_star", v.x_star},
                  {"sigma2", v.extraction.sigma2},
                  {"tight", v.extraction.tight},
                  {"diagnostics", v.diagnostics},
                  {"solver", solver_json(v.solver)},
                  {"wall_time", time_json(v.wall_time)}};
  return j.dump(indent);
}

std::string report_text(const ApproxReport& r) {
  const ExtractionResult& e = r.extraction;
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "lambda      %.4f\nf_dnn       %.6g\nf_app       %.6g\nsigma2      %.3g\n"
                "tight       %s\napperr      %.3g\napperrnm    %.3g\nzero_tensor %s\n"
                "residual^2  %.6g\nsolver      %s, %d iterations, dim %zu\ntime        %s (%.1f ms)\n",
                r.lambda, e.f_dnn, e.f_app, e.sigma2, e.tight ? "true" : "false", e.apperr,
                e.apperrnm, e.zero_tensor ? "true" : "false", r.best_tensor_norm_sq,
                to_string(r.solver.status), r.solver.iters, r.solver.dim,
                format_duration(r.wall_time).c_str(), to_millis(r.wall_time));
  return std::string(buf) + "x_star      " + blocks_text(e.x_star) + "\n";
}

std::string report_text(const CopositivityVerdict& v) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "verdict     %s\nf_dnn       %.6g\nf_app       %.6g\nsolver      %s, %d "
                "iterations, dim %zu\ntime        %s (%.1f ms)\n",
                to_string(v.verdict), v.f_dnn, v.f_app, to_string(v.solver.status),
                v.solver.iters, v.solver.dim, format_duration(v.wall_time).c_str(),
                to_millis(v.wall_time));
  std::string s = std::string(buf) + "x_star      " + blocks_text(v.x_star) + "\n";
  if (!v.diagnostics.empty()) s += "note        " + v.diagnostics + "\n";
  return s;
}

}  // namespace nnrank
