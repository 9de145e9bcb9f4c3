#include "gridohm/gridohm.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/catalog.hpp"
#include "core/errors.hpp"
#include "core/json_io.hpp"
#include "core/mappings.hpp"
#include "core/spectral.hpp"
#include "core/torus.hpp"
#include "core/verify.hpp"

struct gridohm_lattice {
  gridohm::LatticeSpec spec;
};

namespace {

thread_local std::string t_last_error;

gridohm_status to_status(gridohm::Errc e) {
  using gridohm::Errc;
  switch (e) {
    case Errc::ok: return GRIDOHM_OK;
    case Errc::invalid_argument: return GRIDOHM_ERR_INVALID_ARGUMENT;
    case Errc::parse_error: return GRIDOHM_ERR_PARSE;
    case Errc::self_loop: return GRIDOHM_ERR_SELF_LOOP;
    case Errc::unknown_site: return GRIDOHM_ERR_UNKNOWN_SITE;
    case Errc::non_positive_resistance: return GRIDOHM_ERR_NON_POSITIVE_RESISTANCE;
    case Errc::disconnected_lattice: return GRIDOHM_ERR_DISCONNECTED_LATTICE;
    case Errc::unknown_lattice: return GRIDOHM_ERR_UNKNOWN_LATTICE;
    case Errc::singular_point: return GRIDOHM_ERR_SINGULAR_POINT;
    case Errc::no_convergence: return GRIDOHM_ERR_NO_CONVERGENCE;
    case Errc::io_error: return GRIDOHM_ERR_IO;
    case Errc::internal: return GRIDOHM_ERR_INTERNAL;
  }
  return GRIDOHM_ERR_INTERNAL;
}

template <typename F>
gridohm_status guarded(F&& body) {
  try {
    return body();
  } catch (const gridohm::Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GRIDOHM_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return GRIDOHM_ERR_INTERNAL;
  }
}

gridohm_status arg_error(const char* msg) {
  t_last_error = msg;
  return GRIDOHM_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

gridohm::QuadratureConfig to_config(const gridohm_quadrature_config* cfg) {
  gridohm::QuadratureConfig out;
  if (cfg) {
    out.order = cfg->order;
    out.max_refinements = cfg->max_refinements;
    out.target_rel_error = cfg->target_rel_error;
    out.threads = cfg->threads;
  }
  return out;
}

void to_result(const gridohm::ResistanceResult& r, gridohm_result* out) {
  out->value = r.value;
  out->error_estimate = r.error_estimate;
  out->order_used = r.order_used;
  out->converged = r.converged ? 1 : 0;
  out->evaluations = r.evaluations;
  out->wall_seconds = r.wall_seconds;
}

std::vector<int> to_offset(const gridohm_lattice* lat, const int* offset) {
  return std::vector<int>(offset, offset + lat->spec.dimension);
}

}  // namespace

extern "C" {

const char* gridohm_version(void) { return "1.0.0"; }

const char* gridohm_last_error(void) { return t_last_error.c_str(); }

void gridohm_string_free(char* s) { std::free(s); }

gridohm_quadrature_config gridohm_quadrature_config_default(void) {
  const gridohm::QuadratureConfig d;
  return {d.order, d.max_refinements, d.target_rel_error, d.threads};
}

gridohm_status gridohm_lattice_builtin(const char* name, gridohm_lattice** out) {
  if (!name || !out) return arg_error("name and out must be non-null");
  return guarded([&] {
    *out = new gridohm_lattice{gridohm::builtin(name).spec};
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_lattice_chain(double r1, double r2, gridohm_lattice** out) {
  if (!out) return arg_error("out must be non-null");
  return guarded([&] {
    *out = new gridohm_lattice{gridohm::chain2(r1, r2)};
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_lattice_from_json(const char* text, gridohm_lattice** out) {
  if (!text || !out) return arg_error("text and out must be non-null");
  return guarded([&] {
    *out = new gridohm_lattice{gridohm::lattice_from_json(text)};
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_lattice_from_file(const char* path, gridohm_lattice** out) {
  if (!path || !out) return arg_error("path and out must be non-null");
  return guarded([&] {
    *out = new gridohm_lattice{gridohm::lattice_from_file(path)};
    return GRIDOHM_OK;
  });
}

void gridohm_lattice_free(gridohm_lattice* lat) { delete lat; }

gridohm_status gridohm_lattice_to_json(const gridohm_lattice* lat, char** out) {
  if (!lat || !out) return arg_error("lat and out must be non-null");
  return guarded([&] {
    *out = dup_string(gridohm::lattice_to_json(lat->spec));
    return *out ? GRIDOHM_OK : GRIDOHM_ERR_INTERNAL;
  });
}

int gridohm_lattice_dimension(const gridohm_lattice* lat) {
  return lat ? lat->spec.dimension : 0;
}

int gridohm_lattice_site_count(const gridohm_lattice* lat) {
  return lat ? lat->spec.site_count() : 0;
}

gridohm_status gridohm_lattice_site_index(const gridohm_lattice* lat, const char* name,
                                          int* out) {
  if (!lat || !name || !out) return arg_error("lat, name and out must be non-null");
  return guarded([&] {
    *out = lat->spec.site_index(name);
    return GRIDOHM_OK;
  });
}

const char* gridohm_lattice_site_name(const gridohm_lattice* lat, int site) {
  if (!lat || site < 0 || site >= lat->spec.site_count()) return nullptr;
  return lat->spec.sites[site].c_str();
}

gridohm_status gridohm_weighted_degree(const gridohm_lattice* lat, int site, double* out) {
  if (!lat || !out) return arg_error("lat and out must be non-null");
  return guarded([&] {
    if (site < 0 || site >= lat->spec.site_count())
      gridohm::fail(gridohm::Errc::unknown_site, "site index out of range");
    *out = gridohm::weighted_degree(lat->spec, site);
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_resistance(const gridohm_lattice* lat, int from, int to, const int* offset,
                                  const gridohm_quadrature_config* cfg, gridohm_result* out) {
  if (!lat || !offset || !out) return arg_error("lat, offset and out must be non-null");
  return guarded([&] {
    const gridohm::ResistanceResult r = gridohm::resistance(
        lat->spec, {from, to, to_offset(lat, offset)}, to_config(cfg));
    to_result(r, out);
    if (!r.converged) {
      t_last_error = "quadrature refinement cap reached before the target accuracy";
      return GRIDOHM_ERR_NO_CONVERGENCE;
    }
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_resistance_integrand(const gridohm_lattice* lat, int from, int to,
                                            const int* offset, const double* x, double* out) {
  if (!lat || !offset || !x || !out) return arg_error("lat, offset, x and out must be non-null");
  return guarded([&] {
    Eigen::VectorXd xv(lat->spec.dimension);
    for (int i = 0; i < lat->spec.dimension; ++i) xv[i] = x[i];
    *out = gridohm::resistance_integrand(lat->spec, {from, to, to_offset(lat, offset)}, xv);
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_convergence_study(const gridohm_lattice* lat, int from, int to,
                                         const int* offset, const int* orders, int n_orders,
                                         const gridohm_quadrature_config* cfg, double* values) {
  if (!lat || !offset || !orders || !values)
    return arg_error("lat, offset, orders and values must be non-null");
  if (n_orders <= 0) return arg_error("n_orders must be positive");
  return guarded([&] {
    const auto rows = gridohm::convergence_study(
        lat->spec, {from, to, to_offset(lat, offset)},
        std::vector<int>(orders, orders + n_orders), to_config(cfg));
    for (int i = 0; i < n_orders; ++i) values[i] = rows[i].second;
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_torus_resistance(const gridohm_lattice* lat, int from, int to,
                                        const int* offset, const int* sizes, int route,
                                        double* out) {
  if (!lat || !offset || !sizes || !out)
    return arg_error("lat, offset, sizes and out must be non-null");
  if (route != 0 && route != 1) return arg_error("route must be 0 (k-space) or 1 (real-space)");
  return guarded([&] {
    const gridohm::TorusConfig t{std::vector<int>(sizes, sizes + lat->spec.dimension)};
    const gridohm::ResistanceQuery q{from, to, to_offset(lat, offset)};
    *out = route == 0 ? gridohm::torus_resistance_kspace(lat->spec, q, t)
                      : gridohm::torus_resistance_realspace(lat->spec, q, t, 0);
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_chain_resistance(double r1, double r2, int alpha, int beta, long long m,
                                        double* out) {
  if (!out) return arg_error("out must be non-null");
  return guarded([&] {
    *out = gridohm::chain_resistance(r1, r2, alpha, beta, m);
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_mapped_resistance(const char* lattice, int alpha, int beta, long long m,
                                         long long n, const gridohm_quadrature_config* cfg,
                                         gridohm_result* out, char** terms_json) {
  if (!lattice || !out) return arg_error("lattice and out must be non-null");
  return guarded([&] {
    const std::string name = lattice;
    gridohm::MappedResistance mr;
    if (name == "kagome")
      mr = gridohm::kagome_via_triangular(alpha, beta, m, n, to_config(cfg));
    else if (name == "dice")
      mr = gridohm::dice_via_triangular(alpha, beta, m, n, to_config(cfg));
    else if (name == "decorated")
      mr = gridohm::decorated_via_square(alpha, beta, m, n, to_config(cfg));
    else
      gridohm::fail(gridohm::Errc::unknown_lattice,
                    "no mapping for '" + name + "' (available: kagome, dice, decorated)");
    *out = {};
    out->value = mr.value;
    out->error_estimate = mr.error_estimate;
    out->converged = 1;
    if (terms_json) {
      nlohmann::ordered_json doc;
      doc["lattice"] = mr.lattice;
      doc["reference"] = mr.reference;
      doc["alpha"] = mr.alpha;
      doc["beta"] = mr.beta;
      doc["m"] = mr.m;
      doc["n"] = mr.n;
      doc["constant"] = gridohm::round12(mr.constant);
      auto& terms = doc["terms"] = nlohmann::ordered_json::array();
      for (const gridohm::MappingTerm& t : mr.terms) {
        nlohmann::ordered_json jt;
        jt["m"] = t.m;
        jt["n"] = t.n;
        jt["coeff"] = gridohm::round12(t.coeff);
        jt["value"] = gridohm::round12(t.value);
        jt["error_estimate"] = gridohm::round12(t.error_estimate);
        terms.push_back(std::move(jt));
      }
      *terms_json = dup_string(doc.dump(2) + "\n");
      if (!*terms_json) return GRIDOHM_ERR_INTERNAL;
    }
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_reference_resistance(const char* lattice, long long m, long long n,
                                            const gridohm_quadrature_config* cfg,
                                            gridohm_result* out) {
  if (!lattice || !out) return arg_error("lattice and out must be non-null");
  return guarded([&] {
    const std::string name = lattice;
    gridohm::ResistanceResult r;
    if (name == "square")
      r = gridohm::square_resistance(m, n, to_config(cfg));
    else if (name == "triangular")
      r = gridohm::triangular_resistance(m, n, to_config(cfg));
    else
      gridohm::fail(gridohm::Errc::unknown_lattice,
                    "no reference resistance for '" + name + "' (available: square, triangular)");
    to_result(r, out);
    return GRIDOHM_OK;
  });
}

gridohm_status gridohm_catalog_json(char** out) {
  if (!out) return arg_error("out must be non-null");
  return guarded([&] {
    nlohmann::ordered_json doc;
    doc["format"] = 1;
    auto& arr = doc["lattices"] = nlohmann::ordered_json::array();
    for (const gridohm::CatalogEntry& e : gridohm::list_catalog()) {
      nlohmann::ordered_json je;
      je["name"] = e.name;
      je["description"] = e.description;
      je["dimension"] = e.spec.dimension;
      je["sites"] = e.spec.site_count();
      arr.push_back(std::move(je));
    }
    *out = dup_string(doc.dump(2) + "\n");
    return *out ? GRIDOHM_OK : GRIDOHM_ERR_INTERNAL;
  });
}

gridohm_status gridohm_verify(const char* only, const char* profile, int threads,
                              char** report_json, int* failed) {
  if (!report_json || !failed) return arg_error("report_json and failed must be non-null");
  return guarded([&] {
    gridohm::VerifyOptions opts;
    if (only) opts.only = only;
    if (profile && *profile) opts.profile = profile;
    opts.threads = threads;
    const gridohm::VerifyReport rep = gridohm::run_verify(opts);
    *report_json = dup_string(gridohm::verify_report_json(rep));
    if (!*report_json) return GRIDOHM_ERR_INTERNAL;
    *failed = rep.failed;
    return GRIDOHM_OK;
  });
}

}  // extern "C"
