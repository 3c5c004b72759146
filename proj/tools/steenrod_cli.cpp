// Command-line front end. Exit status: 0 when every check passes, 1 when a
// check fails or a map is rejected, 2 on unusable input.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "steenrod/assembly.hpp"
#include "steenrod/complex.hpp"
#include "steenrod/cupi.hpp"
#include "steenrod/errors.hpp"
#include "steenrod/io.hpp"
#include "steenrod/presheaf.hpp"
#include "steenrod/reconstruct.hpp"
#include "steenrod/squares.hpp"

namespace {

using namespace steenrod;

struct RunConfig {
  std::string complex_path;
  std::string presheaf_path;
  std::string source_path;
  std::string target_path;
  std::string map_path;
  std::string simplex;
  std::string out_path;
  std::string format = "text";
  int i = 0;
  int max_i = -1;
  int max_k = -1;
  bool twisted = false;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
};

bool machine(const RunConfig& cfg) { return cfg.format == "machine"; }

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw MalformedInputError(cfg.out_path + ": cannot write file");
  out << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::shared_ptr<const SimplicialComplex> load_complex_ptr(const RunConfig& cfg) {
  return std::make_shared<const SimplicialComplex>(load_complex(cfg.complex_path));
}

std::shared_ptr<const Presheaf> load_presheaf_ptr(std::shared_ptr<const SimplicialComplex> X,
                                                  const std::string& path) {
  return std::make_shared<const Presheaf>(load_presheaf(std::move(X), path));
}

Simplex parse_simplex_flag(const std::string& text) {
  try {
    return Simplex::parse(text);
  } catch (const Error& e) {
    throw MalformedInputError("--simplex: " + std::string(e.what()));
  }
}

// ---------------------------------------------------------------------------

int run_cup(const RunConfig& cfg) {
  const auto X = load_complex_ptr(cfg);
  const Simplex x = parse_simplex_flag(cfg.simplex);
  if (!X->contains(x)) throw UnknownSimplexError(x.str() + " is not a simplex of the complex");
  if (cfg.i < 0) throw MalformedInputError("--i must be nonnegative");
  const CupStructure cup(X);
  const TensorChain value = cfg.twisted ? cup.cup_i_T(cfg.i, x) : cup.cup_i(cfg.i, x);
  if (machine(cfg)) {
    Json terms = Json::array();
    for (const auto& [ab, c] : value.terms()) {
      terms.push_back(Json{{"coefficient", c}, {"left", ab.first.vertices()}, {"right", ab.second.vertices()}});
    }
    emit(cfg, dump(Json{{"i", cfg.i}, {"twisted", cfg.twisted}, {"simplex", x.vertices()}, {"terms", terms}}));
  } else {
    emit(cfg, value.str());
  }
  return 0;
}

std::string class_sum(int degree, const BitVector& coords) {
  std::string out;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (!coords.get(j)) continue;
    if (!out.empty()) out += " + ";
    out += "h" + std::to_string(degree) + "[" + std::to_string(j) + "]";
  }
  return out.empty() ? "0" : out;
}

int run_squares(const RunConfig& cfg) {
  const auto X = load_complex_ptr(cfg);
  const SimplicialCohomology h(X);
  const std::vector<SquareEntry> table = squares_table(h, cfg.max_k);
  if (machine(cfg)) {
    Json dims = Json::object();
    for (int d : h.space().degrees()) dims[std::to_string(d)] = h.space().dimension(d);
    Json records = Json::array();
    for (const SquareEntry& e : table) {
      Json coords = Json::array();
      for (std::size_t j = 0; j < e.output.size(); ++j) coords.push_back(e.output.get(j) ? 1 : 0);
      records.push_back(Json{{"degree", e.degree}, {"class_index", e.class_index}, {"k", e.k},
                             {"output_coordinates", coords}});
    }
    emit(cfg, dump(Json{{"cohomology_dimensions", dims}, {"squares", records}}));
    return 0;
  }
  std::ostringstream out;
  out << "mod 2 cohomology:";
  for (int d : h.space().degrees()) out << " H" << d << "=" << h.space().dimension(d);
  out << "\n";
  out << std::left << std::setw(8) << "degree" << std::setw(7) << "class" << std::setw(4) << "k"
      << "Sq^k(class)\n";
  for (const SquareEntry& e : table) {
    out << std::setw(8) << e.degree << std::setw(7) << e.class_index << std::setw(4) << e.k
        << "Sq^" << e.k << "(" << class_sum(e.degree, [&] {
             BitVector unit(h.space().dimension(e.degree));
             unit.set(e.class_index);
             return unit;
           }()) << ") = " << class_sum(e.degree + e.k, e.output) << "\n";
  }
  emit(cfg, out.str());
  return 0;
}

int run_validate_coalgebra(const RunConfig& cfg) {
  const auto X = load_complex_ptr(cfg);
  const int max_i = cfg.max_i >= 0 ? cfg.max_i : X->dim() + 1;
  const CoalgebraReport report = validate_symmetric_coalgebra(*X, max_i);
  if (machine(cfg)) {
    Json failures = Json::array();
    for (const CoalgebraFailure& f : report.failures) {
      failures.push_back(Json{{"check", f.check}, {"simplex", f.simplex.vertices()}, {"i", f.i},
                              {"discrepancy", f.discrepancy}});
    }
    emit(cfg, dump(Json{{"max_i", max_i},
                        {"simplices_checked", report.simplices_checked},
                        {"identities_checked", report.identities_checked},
                        {"failures", failures}}));
  } else {
    std::ostringstream out;
    out << "max i: " << max_i << "\n"
        << "simplices checked: " << report.simplices_checked << "\n"
        << "identities checked: " << report.identities_checked << "\n"
        << "failures: " << report.failures.size() << "\n";
    for (const CoalgebraFailure& f : report.failures) {
      out << "  " << f.check << " at " << f.simplex.str() << ", i=" << f.i << ": " << f.discrepancy << "\n";
    }
    emit(cfg, out.str());
  }
  return report.ok() ? 0 : 1;
}

int run_assemble(const RunConfig& cfg) {
  const auto X = load_complex_ptr(cfg);
  const auto A = assemble(load_presheaf_ptr(X, cfg.presheaf_path));
  if (machine(cfg)) {
    emit(cfg, dump(assembly_to_json(*A)));
    return 0;
  }
  std::ostringstream out;
  out << "generators: " << A->basis().total_rank() << "\n";
  for (const GenKey& g : A->generators()) {
    out << "  " << A->global_index(g) << "  degree " << g.degree << "  " << A->describe(g) << "\n";
  }
  out << "differential (row, col, value):\n";
  for (const GenKey& g : A->generators()) {
    for (const auto& [row, c] : A->differential().column(g)) {
      out << "  " << A->global_index(GenKey{g.degree - 1, row}) << " " << A->global_index(g) << " " << c << "\n";
    }
  }
  emit(cfg, out.str());
  return 0;
}

int run_verify_comodule(const RunConfig& cfg) {
  const auto X = load_complex_ptr(cfg);
  const auto N = load_presheaf_ptr(X, cfg.presheaf_path);
  const PresheafReport presheaf_report = validate_presheaf(*N);
  ComoduleReport report;
  std::shared_ptr<const AssemblyComplex> A;
  if (presheaf_report.ok()) {
    A = assemble(N);
    report = validate_comodule(*A);
  }
  const bool ok = presheaf_report.ok() && report.ok();
  if (machine(cfg)) {
    Json pf = Json::array();
    for (const PresheafFailure& f : presheaf_report.failures) {
      pf.push_back(Json{{"check", f.check}, {"face", f.face.vertices()}, {"simplex", f.simplex.vertices()},
                        {"detail", f.detail}});
    }
    Json cf = Json::array();
    for (const ComoduleFailure& f : report.failures) {
      cf.push_back(Json{{"check", f.check}, {"i", f.i}, {"twisted", f.twisted},
                        {"pair", A->global_index(f.generator)}, {"detail", f.detail}});
    }
    emit(cfg, dump(Json{{"presheaf_checks", presheaf_report.checks},
                        {"presheaf_failures", pf},
                        {"comodule_checks", report.checks},
                        {"comodule_failures", cf}}));
  } else {
    std::ostringstream out;
    out << "presheaf checks: " << presheaf_report.checks << ", failures: " << presheaf_report.failures.size() << "\n";
    for (const PresheafFailure& f : presheaf_report.failures) {
      out << "  " << f.check << " at " << f.face.str() << "→" << f.simplex.str() << ": " << f.detail << "\n";
    }
    if (A) {
      out << "comodule checks: " << report.checks << ", failures: " << report.failures.size() << "\n";
      for (const ComoduleFailure& f : report.failures) {
        out << "  " << f.check << " (i=" << f.i << (f.twisted ? ", twisted" : "") << ") at "
            << A->describe(f.generator) << ": " << f.detail << "\n";
      }
    }
    emit(cfg, out.str());
  }
  return ok ? 0 : 1;
}

int run_reconstruct(const RunConfig& cfg) {
  const auto X = load_complex_ptr(cfg);
  const auto A = assemble(load_presheaf_ptr(X, cfg.source_path));
  const auto B = assemble(load_presheaf_ptr(X, cfg.target_path));
  const ComoduleMorphism f = parse_assembly_map(A, B, read_text(cfg.map_path), cfg.map_path);
  const ReconstructionResult r = reconstruct(f);
  if (machine(cfg)) {
    Json doc = r.accepted() ? morphism_to_json(*r.morphism) : witness_to_json(f, *r.witness);
    if (r.accepted()) doc["accepted"] = true;
    doc["support_checks"] = r.support_checks;
    doc["naturality_checks"] = r.naturality_checks;
    emit(cfg, dump(doc));
  } else {
    std::ostringstream out;
    if (r.accepted()) {
      out << "accepted\n"
          << "support checks: " << r.support_checks << "\n"
          << "naturality checks: " << r.naturality_checks << "\n"
          << dump(morphism_to_json(*r.morphism));
    } else {
      const RejectionWitness& w = *r.witness;
      out << "rejected: " << w.reason << "\n"
          << "pair: " << A->global_index(w.generator) << " " << A->describe(w.generator) << "\n";
      if (w.i >= 0) {
        out << "identity: " << (w.twisted ? "nabla_T" : "nabla") << " i=" << w.i << "\n"
            << "discrepancy: " << describe(*B, w.discrepancy) << "\n";
      } else {
        out << "identity: chain map\n";
      }
    }
    emit(cfg, out.str());
  }
  return r.accepted() ? 0 : 1;
}

int run_roundtrip(const RunConfig& cfg) {
  const auto X = load_complex_ptr(cfg);
  const auto N = load_presheaf_ptr(X, cfg.source_path);
  const auto M = cfg.target_path.empty() ? N : load_presheaf_ptr(X, cfg.target_path);
  const SampleReport faithful = faithfulness_check(N, M, cfg.trials, cfg.seed);
  const SampleReport full = fullness_roundtrip(N, M, cfg.trials, cfg.seed);
  auto seeds = [](const SampleReport& r) {
    Json out = Json::array();
    for (std::uint64_t s : r.failed_seeds) out.push_back(s);
    return out;
  };
  if (machine(cfg)) {
    emit(cfg, dump(Json{{"seed", cfg.seed},
                        {"trials", cfg.trials},
                        {"faithfulness", {{"passed", faithful.passed}, {"skipped", faithful.skipped},
                                          {"failed_seeds", seeds(faithful)}, {"zero_ok", faithful.zero_ok},
                                          {"injective_on_basis", faithful.injective_on_basis}}},
                        {"roundtrip", {{"passed", full.passed}, {"failed_seeds", seeds(full)}}}}));
  } else {
    std::ostringstream out;
    out << "seed " << cfg.seed << ", trials " << cfg.trials << "\n"
        << "faithfulness: " << faithful.passed << " passed, " << faithful.skipped << " skipped, "
        << faithful.failed_seeds.size() << " failed; zero map " << (faithful.zero_ok ? "ok" : "FAILED")
        << "; injective on basis " << (faithful.injective_on_basis ? "yes" : "NO") << "\n"
        << "round trip: " << full.passed << " passed, " << full.failed_seeds.size() << " failed\n";
    emit(cfg, out.str());
  }
  return faithful.ok() && full.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cup-i coalgebras, assembly of presheaves and reconstruction of morphisms"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--complex", cfg.complex_path, "complex file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", cfg.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out_path, "write the output here instead of stdout");
  };

  auto* cup = app.add_subcommand("cup", "print cup_i of a simplex");
  common(cup);
  cup->add_option("--i", cfg.i, "cup-i index")->required();
  cup->add_option("--simplex", cfg.simplex, "vertices, e.g. \"0,1,2\"")->required();
  cup->add_flag("--twisted", cfg.twisted, "print T cup_i instead");

  auto* squares = app.add_subcommand("squares", "table of Steenrod squares on basis classes");
  common(squares);
  squares->add_option("--max-k", cfg.max_k, "largest k (default: the degree)");

  auto* coalgebra = app.add_subcommand("validate-coalgebra", "check the cup-i coalgebra identities");
  common(coalgebra);
  coalgebra->add_option("--max-i", cfg.max_i, "largest i (default: dim + 1)");

  auto* assemble_cmd = app.add_subcommand("assemble", "assemble a presheaf");
  common(assemble_cmd);
  assemble_cmd->add_option("--presheaf", cfg.presheaf_path, "presheaf file")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify-comodule", "validate a presheaf and its assembly comodule");
  common(verify);
  verify->add_option("--presheaf", cfg.presheaf_path, "presheaf file")->required()->check(CLI::ExistingFile);

  auto* recon = app.add_subcommand("reconstruct", "recover a presheaf morphism from a map of assemblies");
  common(recon);
  recon->add_option("--presheaf-src", cfg.source_path, "source presheaf")->required()->check(CLI::ExistingFile);
  recon->add_option("--presheaf-dst", cfg.target_path, "target presheaf")->required()->check(CLI::ExistingFile);
  recon->add_option("--map", cfg.map_path, "map file")->required()->check(CLI::ExistingFile);

  auto* roundtrip = app.add_subcommand("roundtrip", "faithfulness and round-trip checks on sampled morphisms");
  common(roundtrip);
  roundtrip->add_option("--presheaf-src", cfg.source_path, "source presheaf")->required()->check(CLI::ExistingFile);
  roundtrip->add_option("--presheaf-dst", cfg.target_path, "target presheaf (default: source)")
      ->check(CLI::ExistingFile);
  roundtrip->add_option("--seed", cfg.seed, "first seed")->capture_default_str();
  roundtrip->add_option("--trials", cfg.trials, "number of sampled morphisms")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cup->parsed()) return run_cup(cfg);
    if (squares->parsed()) return run_squares(cfg);
    if (coalgebra->parsed()) return run_validate_coalgebra(cfg);
    if (assemble_cmd->parsed()) return run_assemble(cfg);
    if (verify->parsed()) return run_verify_comodule(cfg);
    if (recon->parsed()) return run_reconstruct(cfg);
    if (roundtrip->parsed()) return run_roundtrip(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
