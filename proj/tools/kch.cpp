// kch: command-line front end for the knot contact homology library.
//
// Exit codes: 0 success or accepted certificate; 2 no certificate found, evidence only, or a
// certificate that fails verification; 1 error or failed check.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kch/kch.hpp"

namespace {

using kch::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotFound = 2;

struct RunConfig {
  std::string command;
  int n = 0;
  std::string word;
  std::string side = "L";
  int k = 0;
  int p = 0;
  std::string alpha;
  std::string gamma;
  std::string p_list;
  std::string q_list;
  bool iterated_torus = false;
  std::string alpha_cert;
  std::string gamma_cert;
  std::string cert;
  std::string suite;
  std::uint64_t seed = 0;
  int restarts = 256;
  double tol = 1e-9;
  int max_iter = 200;
  unsigned threads = 0;
  int count = 200;
  int max_len = 5;
  std::string output;
  std::string format = "json";

  Json to_json() const {
    Json j{{"command", command}};
    if (command == "phi") j.update(Json{{"n", n}, {"word", word}, {"side", side}});
    if (command == "satellite" && iterated_torus) j.update(Json{{"iterated_torus", true}, {"p", p_list}, {"q", q_list}});
    if (command == "satellite" && !iterated_torus) j.update(Json{{"alpha", alpha}, {"k", k}, {"gamma", gamma}, {"p", p}});
    if (command == "torus") j.update(Json{{"p", p}, {"q", q_list}});
    if (command == "ar-search") j.update(Json{{"n", n}, {"word", word}});
    if (command == "construct-aug") {
      if (!alpha_cert.empty()) j.update(Json{{"alpha_cert", alpha_cert}, {"gamma_cert", gamma_cert}});
      else j.update(Json{{"alpha", alpha}, {"k", k}, {"gamma", gamma}, {"p", p}});
    }
    if (command == "verify") j["cert"] = cert;
    if (command == "check")
      j.update(Json{{"suite", suite}, {"n", n}, {"k", k}, {"p", p}, {"count", count}, {"max_len", max_len}});
    j.update(Json{{"seed", seed}, {"restarts", restarts}, {"tol", tol}});
    if (command == "ar-search" || command == "construct-aug") j.update(Json{{"max_iter", max_iter}});
    j.update(Json{{"output", output}, {"format", format}});
    return j;
  }
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad integer list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

kch::SolveOptions solve_options(const RunConfig& c) {
  kch::SolveOptions o;
  o.restarts = c.restarts;
  o.seed = c.seed;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.threads = c.threads;
  return o;
}

std::string matrix_text(const kch::PhiMatrix& m) {
  std::string out = "[";
  for (int i = 1; i <= m.n(); ++i) {
    out += i > 1 ? ",\n [" : "[";
    for (int j = 1; j <= m.n(); ++j) out += (j > 1 ? ", " : "") + kch::to_string(m(i, j));
    out += "]";
  }
  return out + "]\n";
}

Json braid_summary(const kch::BraidWord& b) {
  return Json{{"n", b.strands()},
              {"word", b.letters()},
              {"length", b.length()},
              {"writhe", kch::writhe(b)},
              {"components", kch::component_count(b)}};
}

/// Prints the config echo and result, writes `file_text` to the output path when given.
void emit(const RunConfig& c, const Json& result, const std::string& text, const std::string& file_text = {}) {
  if (!c.output.empty()) kch::write_text_file(c.output, file_text.empty() ? kch::dump(result) : file_text);
  if (c.format == "json") {
    std::cout << kch::dump(Json{{"config", c.to_json()}, {"result", result}});
  } else {
    std::cout << "# config " << c.to_json().dump() << "\n" << text;
  }
}

int cmd_phi(const RunConfig& c) {
  const kch::BraidWord b = kch::parse_braid(c.n, c.word);
  const kch::PhiMatrix m = kch::phi_matrix(b, c.side == "R" ? kch::Side::R : kch::Side::L);
  Json rows = Json::array();
  for (int i = 1; i <= m.n(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= m.n(); ++j) row.push_back(kch::to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  emit(c, Json{{"braid", kch::braid_json(b)}, {"side", c.side}, {"matrix", rows}}, matrix_text(m));
  return kExitOk;
}

int cmd_satellite(const RunConfig& c) {
  kch::BraidWord b;
  if (c.iterated_torus) {
    const auto p = parse_int_list(c.p_list), q = parse_int_list(c.q_list);
    b = kch::iterated_torus_braid(p, q);
  } else {
    b = kch::satellite_braid(kch::parse_braid(c.k, c.alpha), kch::parse_braid(c.p, c.gamma));
  }
  emit(c, braid_summary(b), std::to_string(b.strands()) + ": " + kch::to_string(b) + "\n");
  return kExitOk;
}

int cmd_torus(const RunConfig& c) {
  const auto q = parse_int_list(c.q_list);
  if (q.size() != 1) throw std::invalid_argument("torus takes a single --q");
  const kch::BraidWord b = kch::torus_braid(c.p, q[0]);
  emit(c, braid_summary(b), std::to_string(b.strands()) + ": " + kch::to_string(b) + "\n");
  return kExitOk;
}

std::string certificate_text(const kch::Certificate& cert) {
  std::ostringstream out;
  out.precision(17);
  out << "accepted " << (cert.accepted() ? "yes" : "no") << ", rank " << cert.rank << "\n"
      << "residual_L " << cert.residual_L << "\nresidual_R " << cert.residual_R << "\nideal_residual "
      << cert.ideal_residual << "\n"
      << "lambda " << cert.assignment.lambda() << "\nmu " << cert.assignment.mu() << "\n";
  const int n = cert.assignment.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out << "a" << i << "," << j << " " << cert.assignment.get(i, j) << "\n";
  return out.str();
}

int cmd_ar_search(const RunConfig& c) {
  const kch::BraidWord b = kch::parse_braid(c.n, c.word);
  const kch::Evidence ev = kch::nonexistence_search(b, solve_options(c));
  if (const auto* cert = std::get_if<kch::Certificate>(&ev.result)) {
    const Json j = kch::to_json(*cert);
    emit(c, j, certificate_text(*cert));
    return kExitOk;
  }
  Json j = kch::to_json(std::get<kch::NotFound>(ev.result));
  j["evidence"] = ev.summary;
  std::ostringstream t;
  t.precision(17);
  t << "no certificate after " << j["restarts"] << " restarts; best residual " << j["best_residual"] << "\n"
    << ev.summary.at("label").get<std::string>() << "\n";
  emit(c, j, t.str());
  return kExitNotFound;
}

kch::Certificate solve_or_throw(const kch::BraidWord& b, const RunConfig& c, const char* role) {
  auto r = kch::solve_full_rank(b, solve_options(c));
  if (auto* cert = std::get_if<kch::Certificate>(&r)) return *cert;
  throw std::runtime_error(std::string("no full-rank certificate found for ") + role + "; best residual " +
                           std::to_string(std::get<kch::NotFound>(r).best_residual));
}

int cmd_construct(const RunConfig& c) {
  kch::Certificate ck, cp;
  if (!c.alpha_cert.empty() || !c.gamma_cert.empty()) {
    if (c.alpha_cert.empty() || c.gamma_cert.empty())
      throw std::invalid_argument("construct-aug needs both --alpha-cert and --gamma-cert");
    ck = kch::read_certificate(c.alpha_cert);
    cp = kch::read_certificate(c.gamma_cert);
  } else {
    ck = solve_or_throw(kch::parse_braid(c.k, c.alpha), c, "alpha");
    cp = solve_or_throw(kch::parse_braid(c.p, c.gamma), c, "gamma");
  }
  const kch::Certificate cert = kch::construct_satellite_aug(ck, cp, ck.braid, cp.braid, c.tol);
  emit(c, kch::to_json(cert), certificate_text(cert));
  return kExitOk;
}

int cmd_verify(const RunConfig& c) {
  const kch::Certificate cert = kch::read_certificate(c.cert);
  const Json j = kch::verify_certificate(cert);
  std::ostringstream t;
  t.precision(17);
  t << "accepted " << (j["accepted"].get<bool>() ? "yes" : "no") << ", full rank "
    << (j["full_rank"].get<bool>() ? "yes" : "no") << "\nresidual_L " << j["residual_L"] << "\nresidual_R "
    << j["residual_R"] << "\nideal_residual " << j["ideal_residual"] << "\nrank " << j["rank"] << "\n";
  emit(c, j, t.str());
  return j["full_rank"].get<bool>() ? kExitOk : kExitNotFound;
}

int cmd_check(const RunConfig& c) {
  kch::CheckParams params;
  params.n = c.n;
  params.k = c.k;
  params.p = c.p;
  params.seed = c.seed;
  params.count = c.count;
  params.max_len = c.max_len;
  const kch::Report rep = kch::run_check_suite(c.suite, params);
  std::ostringstream t;
  t << rep.claim << " " << rep.parameters.dump() << ": " << (rep.ok ? "pass" : "FAIL") << " (" << rep.checked
    << " checked)\n";
  for (const auto& d : rep.diffs)
    t << "  entry (" << d.i << "," << d.j << ") " << d.note << ": " << d.lhs << " != " << d.rhs << "\n";
  emit(c, rep.to_json(), t.str());
  return rep.ok ? kExitOk : kExitError;
}

void apply_budget_env() {
  if (const char* env = std::getenv("KCH_TERM_BUDGET")) {
    std::size_t used = 0;
    const std::string s(env);
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || v == 0) throw std::invalid_argument("KCH_TERM_BUDGET must be a positive integer");
    kch::term_budget() = std::size_t(v);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-zero knot contact homology: braid action, satellites, augmentation certificates"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    s->add_option("-o,--output", c.output, "Write the result JSON to this file");
  };
  auto add_solver = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Random seed");
    s->add_option("--restarts", c.restarts, "Restart budget")->check(CLI::PositiveNumber);
    s->add_option("--tol", c.tol, "Acceptance tolerance on residual_L and residual_R")->check(CLI::PositiveNumber);
    s->add_option("--max-iter", c.max_iter, "Iterations per restart")->check(CLI::PositiveNumber);
    s->add_option("--threads", c.threads, "Worker threads (0: all cores)");
  };

  auto* phi = app.add_subcommand("phi", "Print Phi^L or Phi^R of a braid");
  phi->add_option("--n", c.n, "Strand count")->required()->check(CLI::PositiveNumber);
  phi->add_option("--word", c.word, "Braid word, e.g. \"1 -2 1\"")->required();
  phi->add_option("--side", c.side, "L or R")->check(CLI::IsMember({"L", "R"}));
  add_format(phi);

  auto* sat = app.add_subcommand("satellite", "Braid satellite <alpha>_p gamma-bar or an iterated torus braid");
  sat->add_option("--alpha", c.alpha, "Companion braid word");
  sat->add_option("--k", c.k, "Strands of alpha");
  sat->add_option("--gamma", c.gamma, "Pattern braid word");
  sat->add_flag("--iterated-torus", c.iterated_torus, "Build T(p, q) from --p and --q lists");
  sat->add_option("--p", c.p_list, "Strands of gamma, or comma list with --iterated-torus");
  sat->add_option("--q", c.q_list, "Comma list with --iterated-torus");
  add_format(sat);

  auto* tor = app.add_subcommand("torus", "Torus braid (s_1 ... s_{p-1})^q");
  tor->add_option("--p", c.p, "Strands")->required()->check(CLI::PositiveNumber);
  tor->add_option("--q", c.q_list, "Exponent")->required();
  add_format(tor);

  auto* ar = app.add_subcommand("ar-search", "Search for a full-rank augmentation certificate");
  ar->add_option("--n", c.n, "Strand count")->required()->check(CLI::PositiveNumber);
  ar->add_option("--word", c.word, "Braid word")->required();
  add_solver(ar);
  add_format(ar);

  auto* con = app.add_subcommand("construct-aug", "Build the satellite augmentation from two certificates");
  con->add_option("--alpha-cert", c.alpha_cert, "Certificate file for alpha");
  con->add_option("--gamma-cert", c.gamma_cert, "Certificate file for gamma");
  con->add_option("--alpha", c.alpha, "Companion braid word (solved first)");
  con->add_option("--k", c.k, "Strands of alpha");
  con->add_option("--gamma", c.gamma, "Pattern braid word (solved first)");
  con->add_option("--p", c.p, "Strands of gamma");
  add_solver(con);
  add_format(con);

  auto* ver = app.add_subcommand("verify", "Recompute residuals and rank of a certificate file");
  ver->add_option("cert,--cert", c.cert, "Certificate file")->required();
  add_format(ver);

  auto* chk = app.add_subcommand("check", "Run an exact check suite");
  chk->add_option("--suite", c.suite, "Suite name")->required()->check(CLI::IsMember(kch::check_suite_names()));
  chk->add_option("--n", c.n, "Strand count (chainrule, transpose, tau, blocks)");
  chk->add_option("--k", c.k, "Companion strands (psi, commutes, sigma_n)");
  chk->add_option("--p", c.p, "Cabling parameter");
  chk->add_option("--seed", c.seed, "Random seed");
  chk->add_option("--count", c.count, "Random samples");
  chk->add_option("--max-len", c.max_len, "Maximum random word length");
  add_format(chk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    apply_budget_env();
    if (*phi) return c.command = "phi", cmd_phi(c);
    if (*sat) {
      c.command = "satellite";
      if (!c.iterated_torus) {
        if (c.k < 1) throw std::invalid_argument("satellite needs --k");
        c.p = c.p_list.empty() ? 0 : std::stoi(c.p_list);
        if (c.p < 1) throw std::invalid_argument("satellite needs --p");
      }
      return cmd_satellite(c);
    }
    if (*tor) return c.command = "torus", cmd_torus(c);
    if (*ar) return c.command = "ar-search", cmd_ar_search(c);
    if (*con) return c.command = "construct-aug", cmd_construct(c);
    if (*ver) return c.command = "verify", cmd_verify(c);
    if (*chk) {
      c.command = "check";
      if (c.n == 0) c.n = 3;
      if (c.k == 0) c.k = 2;
      if (c.p == 0) c.p = 2;
      return cmd_check(c);
    }
  } catch (const kch::TermBudgetExceeded& e) {
    std::cerr << "error: " << e.what()
              << "\nThe symbolic expansion exceeds the term budget; raise KCH_TERM_BUDGET or use the numeric path "
                 "(ar-search, verify).\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
