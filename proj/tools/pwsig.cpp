// Command-line front end for the pwsig library.

#include "pwsig/pwsig.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsageError = 2;

std::string read_source(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

pwsig::PwMap load(const std::string& path) {
  try {
    return pwsig::parse_element(read_source(path));
  } catch (const pwsig::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void print_features(std::ostream& os, const pwsig::FeatureReport& fr) {
  auto yn = [](bool b) { return b ? "true" : "false"; };
  os << "in_sfin " << yn(fr.in_sfin) << "\n"
     << "right_continuous " << yn(fr.right_continuous) << "\n"
     << "continuous " << yn(fr.continuous) << "\n"
     << "orientation " << pwsig::to_string(fr.orientation) << "\n"
     << "unit_slopes " << yn(fr.unit_slopes) << "\n"
     << "piece_count " << fr.piece_count << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pwsig;

  CLI::App app{"Signature homomorphism and decompositions for piecewise-affine bijections of [0,1)"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> files;
  std::string point;
  std::string kind;
  std::string output;
  std::size_t max_order = 12;
  std::uint64_t seed = 7;

  auto* eval = app.add_subcommand("eval", "Evaluate an element at a point");
  eval->add_option("element", file, "Element document, or - for stdin")->required();
  eval->add_option("x", point, "Point p/q in [0,1)")->required();

  auto* sign = app.add_subcommand("sign", "Print the signature (0 or 1)");
  sign->add_option("element", file)->required();

  auto* comp = app.add_subcommand("compose", "Compose elements; the leftmost is applied last");
  comp->add_option("elements", files)->required()->expected(1, -1);

  auto* inv = app.add_subcommand("invert", "Print the inverse element");
  inv->add_option("element", file)->required();

  auto* dec = app.add_subcommand("decompose", "Factor an element");
  dec->add_option("kind", kind)->required()->check(CLI::IsMember({"rsf", "gts", "homeo", "swaps", "flips"}));
  dec->add_option("element", file)->required();

  auto* cls = app.add_subcommand("classify", "Normal-subgroup level and feature report");
  cls->add_option("element", file)->required();

  auto* wit = app.add_subcommand("witness", "Constructive witnesses");
  wit->add_option("kind", kind)->required()->check(CLI::IsMember({"simplicity", "rc", "orientation"}));
  wit->add_option("element", file)->required();

  auto* ord = app.add_subcommand("order", "Order of an element, searched up to --max");
  ord->add_option("element", file)->required();
  ord->add_option("--max", max_order, "Largest order tried")->check(CLI::PositiveNumber);

  auto* ren = app.add_subcommand("render", "Draw the graph as SVG");
  ren->add_option("element", file)->required();
  ren->add_option("-o,--output", output, "Output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Run the property battery");
  ver->add_option("--seed", seed, "Battery seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    std::ostream& out = std::cout;
    if (*eval) {
      out << to_string(load(file)(RatPoint::parse(point))) << "\n";
    } else if (*sign) {
      out << signature(load(file)) << "\n";
    } else if (*comp) {
      std::vector<PwMap> maps;
      for (const auto& f : files) maps.push_back(load(f));
      out << serialize_element(compose_all(maps));
    } else if (*inv) {
      out << serialize_element(inverse(load(file)));
    } else if (*dec) {
      const PwMap h = load(file);
      if (kind == "rsf") {
        const RSigmaF d = decompose_r_sigma_f(h);
        for (const auto& i : d.r) out << "r " << i << "\n";
        out << "sigma " << d.sigma << "\n" << "f\n" << serialize_element(d.f);
      } else if (kind == "gts") {
        const GTauS d = decompose_g_tau_s(h);
        out << "g\n" << serialize_element(d.g) << "tau " << d.tau << "\n";
        for (const auto& i : d.s) out << "s " << i << "\n";
      } else if (kind == "homeo") {
        const HomeoSplit d = normalize_to_iet(h);
        out << "f\n" << serialize_element(d.f) << "phi\n" << serialize_element(d.phi);
      } else if (kind == "swaps") {
        for (const auto& [i, j] : swaps_factorization(h)) out << "swap " << i << " " << j << "\n";
      } else {
        const FlipWord w = flips_factorization(h);
        for (const auto& i : w.flips) out << "flip " << i << "\n";
        out << "residual " << w.residual << "\n";
      }
    } else if (*cls) {
      const PwMap h = load(file);
      out << "level " << to_string(classify_normal(h)) << "\n"
          << "signature " << signature(h) << "\n";
      print_features(out, classify_features(h));
    } else if (*wit) {
      const PwMap g = load(file);
      if (kind == "simplicity") {
        const SimplicityWitness w = simplicity_witness(g);
        out << "interval " << w.i << "\n" << "image " << w.image << "\n" << "commutator\n" << serialize_element(w.h);
      } else if (kind == "rc") {
        out << "f\n" << serialize_element(normalizer_witness_rc(g));
      } else {
        out << "f\n" << serialize_element(normalizer_witness_orientation(g));
      }
    } else if (*ord) {
      const auto n = element_order_upto(load(file), max_order);
      if (n) {
        out << *n << "\n";
      } else {
        out << "exceeds " << max_order << "\n";
      }
    } else if (*ren) {
      const std::string svg = render_svg(load(file));
      if (output.empty()) {
        out << svg;
      } else {
        std::ofstream os(output, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write '" + output + "'");
        os << svg;
      }
    } else if (*ver) {
      bool all = true;
      for (const auto& r : run_battery(seed)) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.trials << " trials, " << r.failures
            << " failures)";
        if (!r.passed() && !r.first_failure.empty()) out << " first: " << r.first_failure;
        out << "\n";
        all = all && r.passed();
      }
      out << (all ? "all suites passed" : "some suites failed") << " (seed " << seed << ")\n";
      return all ? kOk : kPropertyFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "pwsig: " << e.what() << "\n";
    return kUsageError;
  }
  return kOk;
}
