// gridohm: two-point resistances of infinite periodic resistor networks.
//
// The CLI is a thin shell over the C API (gridohm/gridohm.h): parse flags,
// call the library, render. Timing goes to stderr so stdout stays
// byte-deterministic for identical requests.

#include <gridohm/gridohm.h>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::ordered_json;

namespace {

struct CliError {
  int exit_code;
  std::string code;
  std::string message;
};

const char* status_name(gridohm_status s) {
  switch (s) {
    case GRIDOHM_OK: return "ok";
    case GRIDOHM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GRIDOHM_ERR_PARSE: return "parse_error";
    case GRIDOHM_ERR_SELF_LOOP: return "self_loop";
    case GRIDOHM_ERR_UNKNOWN_SITE: return "unknown_site";
    case GRIDOHM_ERR_NON_POSITIVE_RESISTANCE: return "non_positive_resistance";
    case GRIDOHM_ERR_DISCONNECTED_LATTICE: return "disconnected_lattice";
    case GRIDOHM_ERR_UNKNOWN_LATTICE: return "unknown_lattice";
    case GRIDOHM_ERR_SINGULAR_POINT: return "singular_point";
    case GRIDOHM_ERR_NO_CONVERGENCE: return "no_convergence";
    case GRIDOHM_ERR_IO: return "io_error";
    case GRIDOHM_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

void check(gridohm_status s) {
  if (s != GRIDOHM_OK) throw CliError{2, status_name(s), gridohm_last_error()};
}

// Round to 12 significant digits before handing a number to the JSON writer,
// so the emitted bytes do not depend on sub-ulp noise.
double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string axis_name(int i) {
  static const char* named[] = {"m", "n", "k"};
  return i < 3 ? named[i] : "o" + std::to_string(i + 1);
}

struct LatticeHandle {
  gridohm_lattice* p = nullptr;
  ~LatticeHandle() { gridohm_lattice_free(p); }
  LatticeHandle() = default;
  LatticeHandle(LatticeHandle&& o) noexcept : p(std::exchange(o.p, nullptr)) {}
  LatticeHandle& operator=(LatticeHandle&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
};

struct CString {
  char* p = nullptr;
  ~CString() { gridohm_string_free(p); }
};

struct Args {
  std::string lattice;
  std::string from = "1";
  std::string to = "1";
  std::string offset_text;
  std::string engine = "spectral";
  int torus_size = 8;
  std::string torus_route = "kspace";
  int order = 0;
  int max_refinements = 3;
  double target_rel_error = 1e-5;
  int threads = 0;
  std::string format = "text";
  int max_offset = 0;
  std::string orders_text;
  std::string sizes_text;
  std::string only;
  std::string profile = "default";
  std::string verify_format = "json";
  double r1 = 1.0;
  double r2 = 1.0;
  bool chain_params = false;
};

int parse_int(const std::string& s) {
  int value = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, value);
  if (ec != std::errc{} || ptr != e)
    throw CliError{2, "invalid_argument", "'" + s + "' is not an integer"};
  return value;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_int(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_offset(const std::string& text, int dimension) {
  if (text.empty()) return std::vector<int>(dimension, 0);
  std::vector<int> out = parse_int_list(text);
  if (static_cast<int>(out.size()) != dimension)
    throw CliError{2, "invalid_argument",
                   "offset needs " + std::to_string(dimension) +
                       " comma-separated integers for this lattice"};
  return out;
}

LatticeHandle load_lattice(const Args& a) {
  if (a.lattice.empty()) throw CliError{2, "invalid_argument", "--lattice is required"};
  LatticeHandle h;
  if (a.lattice == "chain2") {
    check(gridohm_lattice_chain(a.r1, a.r2, &h.p));
    return h;
  }
  if (a.chain_params)
    throw CliError{2, "invalid_argument", "--r1/--r2 apply to the chain2 lattice only"};
  std::error_code ec;
  if (std::filesystem::exists(a.lattice, ec))
    check(gridohm_lattice_from_file(a.lattice.c_str(), &h.p));
  else
    check(gridohm_lattice_builtin(a.lattice.c_str(), &h.p));
  return h;
}

int site_of(const gridohm_lattice* lat, const std::string& label) {
  int idx = -1;
  check(gridohm_lattice_site_index(lat, label.c_str(), &idx));
  return idx;
}

gridohm_quadrature_config make_cfg(const Args& a) {
  gridohm_quadrature_config cfg = gridohm_quadrature_config_default();
  cfg.order = a.order;
  cfg.max_refinements = a.max_refinements;
  cfg.target_rel_error = a.target_rel_error;
  cfg.threads = a.threads;
  return cfg;
}

void print_json(const ordered_json& doc) {
  std::fputs(doc.dump(2).c_str(), stdout);
  std::fputc('\n', stdout);
}

// Key/value lines, 6 significant digits; the machine formats carry 12.
void print_text_fields(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows)
    std::printf("%-*s  %s\n", static_cast<int>(width), k.c_str(), v.c_str());
}

void print_csv_row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) std::fputc(',', stdout);
    std::fputs(csv_cell(cells[i]).c_str(), stdout);
  }
  std::fputc('\n', stdout);
}

void require_format(const Args& a, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (a.format == f) return;
  std::string msg = "--format must be one of:";
  for (const char* f : allowed) msg += std::string(" ") + f;
  throw CliError{2, "invalid_argument", msg};
}

// ---------------------------------------------------------------------------
// compute

int cmd_compute(const Args& a) {
  require_format(a, {"json", "csv", "text"});
  LatticeHandle lat = load_lattice(a);
  const int dim = gridohm_lattice_dimension(lat.p);
  const std::vector<int> offset = parse_offset(a.offset_text, dim);
  const int from = site_of(lat.p, a.from);
  const int to = site_of(lat.p, a.to);
  const gridohm_quadrature_config cfg = make_cfg(a);

  ordered_json doc;
  doc["format"] = 1;
  doc["command"] = "compute";
  doc["lattice"] = a.lattice;
  if (a.lattice == "chain2") {
    doc["r1"] = round12(a.r1);
    doc["r2"] = round12(a.r2);
  }
  doc["from"] = a.from;
  doc["to"] = a.to;
  doc["offset"] = offset;
  doc["engine"] = a.engine;

  std::vector<std::pair<std::string, std::string>> text_rows;
  std::vector<std::string> csv_header, csv_row;
  int exit_code = 0;

  if (a.engine == "spectral") {
    gridohm_result r{};
    gridohm_status st = gridohm_resistance(lat.p, from, to, offset.data(), &cfg, &r);
    if (st == GRIDOHM_ERR_NO_CONVERGENCE)
      exit_code = 3;
    else
      check(st);
    std::fprintf(stderr, "timing: %.3f s\n", r.wall_seconds);
    doc["value"] = round12(r.value);
    doc["error_estimate"] = round12(r.error_estimate);
    doc["order"] = r.order_used;
    doc["evaluations"] = r.evaluations;
    doc["converged"] = r.converged != 0;
    text_rows = {{"value", fmt(r.value, 6)},
                 {"error_estimate", fmt(r.error_estimate, 6)},
                 {"order", std::to_string(r.order_used)},
                 {"evaluations", std::to_string(static_cast<long long>(r.evaluations))},
                 {"converged", r.converged ? "yes" : "no"}};
    csv_header = {"value", "error_estimate", "order", "evaluations", "converged"};
    csv_row = {fmt(r.value, 12), fmt(r.error_estimate, 12), std::to_string(r.order_used),
               std::to_string(static_cast<long long>(r.evaluations)),
               r.converged ? "true" : "false"};
  } else if (a.engine == "torus") {
    if (a.torus_size < 2)
      throw CliError{2, "invalid_argument", "--torus-size must be at least 2"};
    if (a.torus_route != "kspace" && a.torus_route != "realspace")
      throw CliError{2, "invalid_argument", "--torus-route must be kspace or realspace"};
    const std::vector<int> sizes(dim, a.torus_size);
    double value = 0.0;
    check(gridohm_torus_resistance(lat.p, from, to, offset.data(), sizes.data(),
                                   a.torus_route == "kspace" ? 0 : 1, &value));
    doc["torus_size"] = a.torus_size;
    doc["route"] = a.torus_route;
    doc["value"] = round12(value);
    text_rows = {{"value", fmt(value, 6)},
                 {"torus_size", std::to_string(a.torus_size)},
                 {"route", a.torus_route}};
    csv_header = {"value", "torus_size", "route"};
    csv_row = {fmt(value, 12), std::to_string(a.torus_size), a.torus_route};
  } else if (a.engine == "mapping") {
    double value = 0.0;
    double err = 0.0;
    std::string reference;
    CString terms;
    if (a.lattice == "chain2") {
      check(gridohm_chain_resistance(a.r1, a.r2, from, to, offset[0], &value));
      reference = "closed form";
    } else if (a.lattice == "square" || a.lattice == "triangular") {
      gridohm_result r{};
      check(gridohm_reference_resistance(a.lattice.c_str(), offset[0], offset[1], &cfg, &r));
      value = r.value;
      err = r.error_estimate;
      reference = a.lattice;
    } else if (a.lattice == "kagome" || a.lattice == "dice" || a.lattice == "decorated") {
      gridohm_result r{};
      check(gridohm_mapped_resistance(a.lattice.c_str(), from, to, offset[0], offset[1], &cfg,
                                      &r, a.format == "json" ? &terms.p : nullptr));
      value = r.value;
      err = r.error_estimate;
      reference = a.lattice == "decorated" ? "square" : "triangular";
    } else {
      throw CliError{2, "invalid_argument",
                     "--engine mapping supports chain2, square, triangular, kagome, dice, "
                     "decorated"};
    }
    doc["value"] = round12(value);
    doc["error_estimate"] = round12(err);
    doc["reference"] = reference;
    if (terms.p) doc["mapping"] = ordered_json::parse(terms.p);
    text_rows = {{"value", fmt(value, 6)},
                 {"error_estimate", fmt(err, 6)},
                 {"reference", reference}};
    csv_header = {"value", "error_estimate", "reference"};
    csv_row = {fmt(value, 12), fmt(err, 12), reference};
  } else {
    throw CliError{2, "invalid_argument", "--engine must be spectral, torus or mapping"};
  }

  if (a.format == "json") {
    print_json(doc);
  } else if (a.format == "csv") {
    print_csv_row(csv_header);
    print_csv_row(csv_row);
  } else {
    print_text_fields(text_rows);
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// table

std::vector<std::vector<int>> offsets_up_to(int dimension, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(dimension, -k);
  while (true) {
    out.push_back(cur);
    int i = dimension - 1;
    while (i >= 0 && cur[i] == k) cur[i--] = -k;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

int cmd_table(const Args& a) {
  require_format(a, {"json", "csv", "text"});
  if (a.max_offset < 0 || a.max_offset > 10)
    throw CliError{2, "invalid_argument", "--max-offset must be in 0..10"};
  LatticeHandle lat = load_lattice(a);
  const int dim = gridohm_lattice_dimension(lat.p);
  const int sites = gridohm_lattice_site_count(lat.p);
  const gridohm_quadrature_config cfg = make_cfg(a);
  const auto offsets = offsets_up_to(dim, a.max_offset);

  ordered_json doc;
  doc["format"] = 1;
  doc["command"] = "table";
  doc["lattice"] = a.lattice;
  if (a.lattice == "chain2") {
    doc["r1"] = round12(a.r1);
    doc["r2"] = round12(a.r2);
  }
  doc["max_offset"] = a.max_offset;
  auto& entries = doc["entries"] = ordered_json::array();

  std::vector<std::string> header = {"from", "to"};
  for (int i = 0; i < dim; ++i) header.push_back(axis_name(i));
  header.insert(header.end(), {"value", "error_estimate", "order", "converged"});

  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = 0;
  double wall = 0.0;
  for (int s = 0; s < sites; ++s) {
    for (int t = 0; t < sites; ++t) {
      for (const std::vector<int>& off : offsets) {
        gridohm_result r{};
        gridohm_status st = gridohm_resistance(lat.p, s, t, off.data(), &cfg, &r);
        if (st == GRIDOHM_ERR_NO_CONVERGENCE)
          exit_code = 3;
        else
          check(st);
        wall += r.wall_seconds;
        const std::string from = gridohm_lattice_site_name(lat.p, s);
        const std::string to = gridohm_lattice_site_name(lat.p, t);
        ordered_json je;
        je["from"] = from;
        je["to"] = to;
        je["offset"] = off;
        je["value"] = round12(r.value);
        je["error_estimate"] = round12(r.error_estimate);
        je["order"] = r.order_used;
        je["converged"] = r.converged != 0;
        entries.push_back(std::move(je));
        std::vector<std::string> row = {from, to};
        for (int v : off) row.push_back(std::to_string(v));
        row.insert(row.end(), {fmt(r.value, a.format == "text" ? 6 : 12),
                               fmt(r.error_estimate, a.format == "text" ? 6 : 12),
                               std::to_string(r.order_used), r.converged ? "true" : "false"});
        csv_rows.push_back(std::move(row));
      }
    }
  }
  std::fprintf(stderr, "timing: %.3f s total\n", wall);

  if (a.format == "json") {
    print_json(doc);
  } else if (a.format == "csv") {
    print_csv_row(header);
    for (const auto& row : csv_rows) print_csv_row(row);
  } else {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      width[c] = header[c].size();
      for (const auto& row : csv_rows) width[c] = std::max(width[c], row[c].size());
    }
    auto print_aligned = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c)
        std::printf("%s%-*s", c ? "  " : "", static_cast<int>(width[c]), row[c].c_str());
      std::fputc('\n', stdout);
    };
    print_aligned(header);
    for (const auto& row : csv_rows) print_aligned(row);
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// converge

int cmd_converge(const Args& a) {
  require_format(a, {"json", "csv", "text"});
  LatticeHandle lat = load_lattice(a);
  const int dim = gridohm_lattice_dimension(lat.p);
  const std::vector<int> offset = parse_offset(a.offset_text, dim);
  const int from = site_of(lat.p, a.from);
  const int to = site_of(lat.p, a.to);
  gridohm_quadrature_config cfg = make_cfg(a);

  std::vector<int> orders;
  if (!a.orders_text.empty()) {
    orders = parse_int_list(a.orders_text);
  } else if (dim == 1) {
    orders = {256, 512, 1024, 2048};
  } else if (dim == 2) {
    orders = {32, 64, 128, 256};
  } else {
    orders = {8, 16, 32, 64};
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 2 || orders[i] % 2 != 0)
      throw CliError{2, "invalid_argument", "orders must be even and at least 2"};
    if (i && orders[i] <= orders[i - 1])
      throw CliError{2, "invalid_argument", "orders must be strictly increasing"};
  }
  std::vector<int> sizes;
  if (!a.sizes_text.empty()) {
    sizes = parse_int_list(a.sizes_text);
  } else if (dim == 1) {
    sizes = {8, 16, 32, 64};
  } else if (dim == 2) {
    sizes = {4, 8, 16, 32};
  } else {
    sizes = {4, 8, 16};
  }
  if (a.torus_route != "kspace" && a.torus_route != "realspace")
    throw CliError{2, "invalid_argument", "--torus-route must be kspace or realspace"};

  std::vector<double> spectral(orders.size());
  check(gridohm_convergence_study(lat.p, from, to, offset.data(), orders.data(),
                                  static_cast<int>(orders.size()), &cfg, spectral.data()));
  std::vector<double> torus(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::vector<int> full(dim, sizes[i]);
    check(gridohm_torus_resistance(lat.p, from, to, offset.data(), full.data(),
                                   a.torus_route == "kspace" ? 0 : 1, &torus[i]));
  }

  ordered_json doc;
  doc["format"] = 1;
  doc["command"] = "converge";
  doc["lattice"] = a.lattice;
  if (a.lattice == "chain2") {
    doc["r1"] = round12(a.r1);
    doc["r2"] = round12(a.r2);
  }
  doc["from"] = a.from;
  doc["to"] = a.to;
  doc["offset"] = offset;
  auto& js = doc["spectral"] = ordered_json::array();
  for (std::size_t i = 0; i < orders.size(); ++i)
    js.push_back({{"order", orders[i]}, {"value", round12(spectral[i])}});
  doc["route"] = a.torus_route;
  auto& jt = doc["torus"] = ordered_json::array();
  for (std::size_t i = 0; i < sizes.size(); ++i)
    jt.push_back({{"size", sizes[i]}, {"value", round12(torus[i])}});

  if (a.format == "json") {
    print_json(doc);
    return 0;
  }
  const std::size_t rows = std::max(orders.size(), sizes.size());
  const int digits = a.format == "csv" ? 12 : 6;
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::string> row(4);
    if (i < orders.size()) {
      row[0] = std::to_string(orders[i]);
      row[1] = fmt(spectral[i], digits);
    }
    if (i < sizes.size()) {
      row[2] = std::to_string(sizes[i]);
      row[3] = fmt(torus[i], digits);
    }
    cells.push_back(std::move(row));
  }
  const std::vector<std::string> header = {"order", "spectral", "torus_size", "torus"};
  if (a.format == "csv") {
    print_csv_row(header);
    for (const auto& row : cells) print_csv_row(row);
  } else {
    std::vector<std::size_t> width(4);
    for (std::size_t c = 0; c < 4; ++c) {
      width[c] = header[c].size();
      for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }
    auto print_aligned = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c)
        std::printf("%s%-*s", c ? "  " : "", static_cast<int>(width[c]),
                    row[c].empty() ? "-" : row[c].c_str());
      std::fputc('\n', stdout);
    };
    print_aligned(header);
    for (const auto& row : cells) print_aligned(row);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Args& a) {
  if (a.verify_format != "json" && a.verify_format != "text")
    throw CliError{2, "invalid_argument", "--format must be one of: json text"};
  CString report;
  int failed = 0;
  check(gridohm_verify(a.only.empty() ? nullptr : a.only.c_str(), a.profile.c_str(), a.threads,
                       &report.p, &failed));
  if (a.verify_format == "json") {
    std::fputs(report.p, stdout);
  } else {
    const ordered_json doc = ordered_json::parse(report.p);
    for (const auto& c : doc["checks"]) {
      std::printf("[%s] %s :: %s  expected=%s computed=%s tol=%s%s\n",
                  c["pass"].get<bool>() ? "PASS" : "FAIL",
                  c["group"].get<std::string>().c_str(), c["name"].get<std::string>().c_str(),
                  fmt(c["expected"].get<double>(), 9).c_str(),
                  fmt(c["computed"].get<double>(), 9).c_str(),
                  fmt(c["tolerance"].get<double>(), 3).c_str(),
                  c["relative"].get<bool>() ? " (rel)" : "");
      if (!c["pass"].get<bool>() && c.contains("detail"))
        std::printf("       %s\n", c["detail"].get<std::string>().c_str());
    }
    const int total = doc["total"].get<int>();
    std::printf("%d/%d checks passed (profile %s)\n", total - doc["failed"].get<int>(), total,
                doc["profile"].get<std::string>().c_str());
  }
  return failed > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// catalog / export

int cmd_catalog(const Args& a) {
  require_format(a, {"json", "csv", "text"});
  CString text;
  check(gridohm_catalog_json(&text.p));
  if (a.format == "json") {
    std::fputs(text.p, stdout);
    return 0;
  }
  const ordered_json doc = ordered_json::parse(text.p);
  if (a.format == "csv") {
    print_csv_row({"name", "dimension", "sites", "description"});
    for (const auto& e : doc["lattices"])
      print_csv_row({e["name"].get<std::string>(), std::to_string(e["dimension"].get<int>()),
                     std::to_string(e["sites"].get<int>()),
                     e["description"].get<std::string>()});
  } else {
    for (const auto& e : doc["lattices"])
      std::printf("%-16s d=%d  %d sites  %s\n", e["name"].get<std::string>().c_str(),
                  e["dimension"].get<int>(), e["sites"].get<int>(),
                  e["description"].get<std::string>().c_str());
  }
  return 0;
}

int cmd_export(const Args& a) {
  LatticeHandle lat = load_lattice(a);
  CString text;
  check(gridohm_lattice_to_json(lat.p, &text.p));
  std::fputs(text.p, stdout);
  return 0;
}

// ---------------------------------------------------------------------------

void add_lattice_opts(CLI::App* sub, Args& g) {
  sub->add_option("--lattice", g.lattice, "catalog name or lattice JSON file")->required();
  sub->add_option("--r1", g.r1, "first chain2 resistance (chain2 only)")
      ->each([&g](const std::string&) { g.chain_params = true; });
  sub->add_option("--r2", g.r2, "second chain2 resistance (chain2 only)")
      ->each([&g](const std::string&) { g.chain_params = true; });
}

void add_query_opts(CLI::App* sub, Args& g) {
  sub->add_option("--from", g.from, "source site label")->capture_default_str();
  sub->add_option("--to", g.to, "target site label")->capture_default_str();
  sub->add_option("--offset", g.offset_text,
                  "unit-cell offset of the target site, comma-separated integers (default all "
                  "zero)");
}

void add_quadrature_opts(CLI::App* sub, Args& g) {
  sub->add_option("--order", g.order, "midpoint nodes per dimension (0: dimension default)")
      ->capture_default_str();
  sub->add_option("--max-refinements", g.max_refinements, "order doublings allowed")
      ->capture_default_str();
  sub->add_option("--target-rel-err", g.target_rel_error, "relative accuracy target")
      ->capture_default_str();
  sub->add_option("--threads", g.threads, "worker threads (0: GRIDOHM_THREADS, then hardware)")
      ->capture_default_str();
}

void add_format_opt(CLI::App* sub, Args& g) {
  sub->add_option("--format", g.format, "output format: json, csv or text")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact two-point resistances of infinite periodic resistor lattices"};
  app.set_version_flag("--version", gridohm_version());
  app.require_subcommand(1);

  Args g;
  int exit_code = 0;

  CLI::App* compute = app.add_subcommand("compute", "Resistance between two sites");
  add_lattice_opts(compute, g);
  add_query_opts(compute, g);
  add_quadrature_opts(compute, g);
  add_format_opt(compute, g);
  compute->add_option("--engine", g.engine, "spectral, torus or mapping")->capture_default_str();
  compute->add_option("--torus-size", g.torus_size, "sites per axis for --engine torus")
      ->capture_default_str();
  compute->add_option("--torus-route", g.torus_route, "kspace or realspace")
      ->capture_default_str();
  compute->callback([&] { exit_code = cmd_compute(g); });

  CLI::App* table = app.add_subcommand("table", "Site-pair resistance table over cell offsets");
  add_lattice_opts(table, g);
  add_quadrature_opts(table, g);
  add_format_opt(table, g);
  table->add_option("--max-offset", g.max_offset, "offsets range over [-k, k] per axis")
      ->capture_default_str();
  table->callback([&] { exit_code = cmd_table(g); });

  CLI::App* converge =
      app.add_subcommand("converge", "Spectral orders and torus sizes side by side");
  add_lattice_opts(converge, g);
  add_query_opts(converge, g);
  add_quadrature_opts(converge, g);
  add_format_opt(converge, g);
  converge->add_option("--orders", g.orders_text, "comma-separated spectral orders");
  converge->add_option("--torus-sizes", g.sizes_text, "comma-separated torus sizes");
  converge->add_option("--torus-route", g.torus_route, "kspace or realspace")
      ->capture_default_str();
  converge->callback([&] { exit_code = cmd_converge(g); });

  CLI::App* verify = app.add_subcommand("verify", "Run the built-in verification suite");
  verify->add_option("--only", g.only, "run a single check group");
  verify->add_option("--profile", g.profile, "default or quick")->capture_default_str();
  verify->add_option("--threads", g.threads, "worker threads")->capture_default_str();
  verify->add_option("--format", g.verify_format, "json or text")->capture_default_str();
  verify->callback([&] { exit_code = cmd_verify(g); });

  CLI::App* catalog = app.add_subcommand("catalog", "List the built-in lattices");
  add_format_opt(catalog, g);
  catalog->callback([&] { exit_code = cmd_catalog(g); });

  CLI::App* exportc = app.add_subcommand("export", "Print the canonical lattice document");
  add_lattice_opts(exportc, g);
  exportc->callback([&] { exit_code = cmd_export(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json err;
    err["format"] = 1;
    err["error"] = {{"code", "invalid_argument"}, {"message", e.what()}};
    print_json(err);
    return 2;
  } catch (const CliError& e) {
    ordered_json err;
    err["format"] = 1;
    err["error"] = {{"code", e.code}, {"message", e.message}};
    print_json(err);
    return e.exit_code;
  } catch (const std::exception& e) {
    ordered_json err;
    err["format"] = 1;
    err["error"] = {{"code", "internal"}, {"message", e.what()}};
    print_json(err);
    return 2;
  }
  return exit_code;
}
