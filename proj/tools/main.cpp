#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latcert/engine.hpp"
#include "latcert/json_io.hpp"
#include "latcert/refuter.hpp"

using namespace latcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUnknown = 2;

IntPoly parse_poly(const std::string& csv) {
  std::vector<Int> coeffs;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) coeffs.emplace_back(tok);
  if (coeffs.empty() || coeffs.back() != 1)
    throw std::invalid_argument("polynomial must be monic (coefficients low to high)");
  return IntPoly(coeffs);
}

int cmd_solve(const std::string& instance_path, const std::string& output_path) {
  ProblemInstance inst = instance_from_json(read_json_file(instance_path));
  Certificate cert;
  try {
    cert = solve(inst);
  } catch (const EngineUnknown& e) {
    std::cout << "unknown: " << e.what() << "\n";
    return kExitUnknown;
  }
  VerifyResult vr = verify_certificate(inst, cert);
  if (!vr.ok) {
    std::cout << "internal verification failed: " << vr.reason << "\n";
    return kExitInvalid;
  }
  write_json_file(output_path, certificate_to_json(cert, "verified"));
  std::cout << "verified certificate written to " << output_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& cert_path) {
  ProblemInstance inst = instance_from_json(read_json_file(instance_path));
  Certificate cert = certificate_from_json(read_json_file(cert_path));
  VerifyResult vr = verify_certificate(inst, cert);
  if (vr.ok) {
    std::cout << "certificate verifies\n";
    return kExitOk;
  }
  std::cout << "certificate rejected: " << vr.reason << "\n";
  return kExitInvalid;
}

int cmd_classify(const std::string& poly_csv, long max_prime) {
  Order o = make_order(parse_poly(poly_csv));
  std::cout << "f = " << o.f.str() << "\n";
  std::cout << "disc = " << o.disc.get_str() << "\n";
  for (Int ell(2); ell <= max_prime; ++ell) {
    if (!is_prime(ell)) continue;
    std::cout << "  " << ell.get_str() << ": ";
    if (!o.is_good_prime(ell)) {
      int v = 0;
      Int d = abs(o.disc);
      while (d % ell == 0) {
        d /= ell;
        ++v;
      }
      std::cout << "bad (disc valuation " << v << ")\n";
      continue;
    }
    auto factors = splitting(o, PadicContext(ell, 1));
    if (factors.size() == 1 && factors[0].residue_degree == o.degree)
      std::cout << "inert";
    else if (static_cast<int>(factors.size()) == o.degree)
      std::cout << "split";
    else
      std::cout << "mixed";
    std::cout << " (residue degrees";
    for (const auto& fac : factors) std::cout << " " << fac.residue_degree;
    std::cout << ")\n";
  }
  return kExitOk;
}

int cmd_hilbert(const std::string& a_str, const std::string& b_str) {
  Rat a(a_str), b(b_str);
  a.canonicalize();
  b.canonicalize();
  auto ram = is_division({a, b});
  std::cout << "(" << a.get_str() << ", " << b.get_str() << "): ramified at {";
  bool first = true;
  for (const Int& p : ram.finite) {
    std::cout << (first ? "" : ", ") << p.get_str();
    first = false;
  }
  if (ram.infinite) std::cout << (first ? "" : ", ") << "inf";
  std::cout << "}; division: " << (ram.division ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_demo(unsigned long seed, int trials, int precision) {
  RStabilityModel model = make_r_model({Rat(-1), Rat(-1)}, {Int(3), Int(5)}, precision);
  std::mt19937_64 rng(seed);
  // candidates: unimodular shears times diagonal scalings coprime to S
  const Rat scales[] = {Rat(1), Rat(2), Rat(7), Rat(1, 2), Rat(1, 7)};
  int stable = 0, witnesses = 0;
  for (int t = 0; t < trials; ++t) {
    RatMatrix c = to_rat(IntMatrix::identity(4));
    for (int k = 0; k < 12; ++k) {
      int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
      if (i == j) continue;
      long coef = static_cast<long>(rng() % 7) - 3;
      for (int r = 0; r < 4; ++r) c(r, i) += Rat(coef) * c(r, j);
    }
    for (int j = 0; j < 4; ++j) {
      const Rat& s = scales[rng() % 5];
      for (int r = 0; r < 4; ++r) c(r, j) *= s;
    }
    auto w = check_R_stability(model, c);
    if (!w) {
      ++stable;
      std::cout << "trial " << t << ": candidate reported stable\n";
    } else {
      ++witnesses;
    }
  }
  std::cout << stable << "/" << trials << " candidates stable; " << witnesses
            << " witnesses emitted\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lattice-similarity certificates for integral operators"};
  app.require_subcommand(1);

  std::string instance_path, cert_path, output_path = "certificate.json";
  std::string poly_csv, hil_a, hil_b;
  long max_prime = 13;
  unsigned long seed = 1;
  int trials = 100, precision = 24;

  auto* s_solve = app.add_subcommand("solve", "solve an instance and emit a certificate");
  s_solve->add_option("instance", instance_path, "instance JSON path")->required();
  s_solve->add_option("--output,-o", output_path, "certificate output path");

  auto* s_verify = app.add_subcommand("verify", "re-check a certificate against an instance");
  s_verify->add_option("instance", instance_path, "instance JSON path")->required();
  s_verify->add_option("certificate", cert_path, "certificate JSON path")->required();

  auto* s_classify = app.add_subcommand("classify", "discriminant and prime splitting of an order");
  s_classify->add_option("f", poly_csv, "monic polynomial, coefficients low to high, comma-separated")
      ->required();
  s_classify->add_option("--max-prime", max_prime, "largest prime to classify");

  auto* s_hilbert = app.add_subcommand("hilbert", "ramification of the quaternion algebra (a, b)");
  s_hilbert->add_option("a", hil_a, "first parameter (rational)")->required();
  s_hilbert->add_option("b", hil_b, "second parameter (rational)")->required();

  auto* s_demo = app.add_subcommand(
      "demo-counterexample", "refute stability of sampled lattices under the nilpotent extension");
  s_demo->add_option("--seed", seed, "RNG seed (fixed default for reproducibility)");
  s_demo->add_option("--trials", trials, "number of sampled candidates");
  s_demo->add_option("--precision", precision, "working precision N");

  CLI11_PARSE(app, argc, argv);

  try {
    if (s_solve->parsed()) return cmd_solve(instance_path, output_path);
    if (s_verify->parsed()) return cmd_verify(instance_path, cert_path);
    if (s_classify->parsed()) return cmd_classify(poly_csv, max_prime);
    if (s_hilbert->parsed()) return cmd_hilbert(hil_a, hil_b);
    if (s_demo->parsed()) return cmd_demo(seed, trials, precision);
  } catch (const EngineUnknown& e) {
    std::cout << "unknown: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
