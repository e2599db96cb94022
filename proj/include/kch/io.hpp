#pragma once

// JSON forms of certificates, solver outcomes and reports. Doubles are written in the shortest
// decimal form that parses back to the same bits.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "kch/augment.hpp"

namespace kch {

using Json = nlohmann::ordered_json;

inline Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline Json braid_json(const BraidWord& b) { return Json{{"n", b.strands()}, {"word", b.letters()}}; }

inline BraidWord braid_from_json(const Json& j) {
  return BraidWord(j.at("n").get<int>(), j.at("word").get<std::vector<int>>());
}

inline Json to_json(const Certificate& c) {
  Json gens = Json::array();
  const int n = c.assignment.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) {
        const Complex v = c.assignment.get(i, j);
        gens.push_back(Json{{"i", i}, {"j", j}, {"re", v.real()}, {"im", v.imag()}});
      }
  Json out;
  out["braid"] = braid_json(c.braid);
  out["lambda"] = complex_json(c.assignment.lambda());
  out["mu"] = complex_json(c.assignment.mu());
  out["generators"] = std::move(gens);
  out["residual_L"] = c.residual_L;
  out["residual_R"] = c.residual_R;
  out["ideal_residual"] = c.ideal_residual;
  out["rank"] = c.rank;
  out["seed"] = c.seed;
  out["restarts"] = c.restarts;
  out["tol"] = c.tol;
  out["accepted"] = c.accepted();
  out["metadata"] = c.metadata;
  return out;
}

inline Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.braid = braid_from_json(j.at("braid"));
  const int n = c.braid.strands();
  c.assignment = Assignment(n);
  c.assignment.set_lambda(complex_from_json(j.at("lambda")));
  c.assignment.set_mu(complex_from_json(j.at("mu")));
  for (const auto& g : j.at("generators")) {
    const int gi = g.at("i").get<int>(), gj = g.at("j").get<int>();
    if (gi == gj) throw std::invalid_argument("certificate lists a diagonal generator");
    c.assignment.set(gi, gj, {g.at("re").get<double>(), g.at("im").get<double>()});
  }
  c.residual_L = j.at("residual_L").get<double>();
  c.residual_R = j.at("residual_R").get<double>();
  c.ideal_residual = j.at("ideal_residual").get<double>();
  c.rank = j.at("rank").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.restarts = j.at("restarts").get<int>();
  c.tol = j.at("tol").get<double>();
  if (j.contains("metadata")) c.metadata = j.at("metadata");
  return c;
}

inline Json to_json(const NotFound& nf) {
  Json out;
  out["status"] = "not_found";
  out["braid"] = braid_json(nf.braid);
  out["best_residual"] = nf.best_residual;
  out["best_restart"] = nf.best_restart;
  out["restarts"] = nf.restarts;
  out["seed"] = nf.seed;
  out["tol"] = nf.tol;
  out["summary"] = nf.summary;
  return out;
}

inline Json to_json(const SolveResult& r) {
  return std::visit([](const auto& v) { return to_json(v); }, r);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline Certificate read_certificate(const std::string& path) { return certificate_from_json(read_json_file(path)); }

inline void write_certificate(const std::string& path, const Certificate& c) { write_text_file(path, dump(to_json(c))); }

/// Recomputes residuals and rank of a certificate from its stored values alone.
inline Json verify_certificate(const Certificate& c) {
  Json out;
  const ResidualPair rp = full_rank_residual(c.braid, c.assignment);
  out["braid"] = braid_json(c.braid);
  out["residual_L"] = rp.L;
  out["residual_R"] = rp.R;
  out["ideal_residual"] = ideal_residual(c.braid, c.assignment);
  try {
    out["rank"] = aug_rank(c.assignment);
  } catch (const OutOfTheory& e) {
    out["rank"] = nullptr;
    out["rank_error"] = e.what();
  }
  out["tol"] = c.tol;
  out["accepted"] = rp.L <= c.tol && rp.R <= c.tol;
  out["full_rank"] = out["accepted"].get<bool>() && out["rank"].is_number() && out["rank"].get<int>() == c.braid.strands();
  return out;
}

}  // namespace kch
