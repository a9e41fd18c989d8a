// Copyright 2026 The ncdisint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ncdisint/io.hpp"
#include "ncdisint/measurement.hpp"

namespace {

namespace core = ncdisint::core;
namespace algebra = ncdisint::algebra;
namespace maps = ncdisint::maps;
namespace disint = ncdisint::disint;
namespace classical = ncdisint::classical;
namespace measure = ncdisint::measure;
namespace io = ncdisint::io;
using core::Tolerance;
using io::field;
using io::Json;

Json run_check_map(const Json& payload, const Tolerance& tol) {
  const maps::BlockMap map = io::parse_blockmap(field(payload, "map"));
  return Json{{"cp", maps::is_cp(map, tol)},
              {"unital", maps::is_unital(map, tol)},
              {"hom", maps::verify_hom(map, tol)},
              {"residuals", Json{{"unitality", maps::unitality_residual(map)}}}};
}

Json run_ae_equal(const Json& payload, const Tolerance& tol) {
  const maps::BlockMap f = io::parse_blockmap(field(payload, "f"));
  const maps::BlockMap g = io::parse_blockmap(field(payload, "g"));
  const algebra::State xi = io::parse_state(field(payload, "xi"), tol);
  return io::to_json(maps::ae_compare(f, g, xi, tol));
}

Json run_disintegrate(const Json& payload, const Tolerance& tol) {
  if (payload.contains("matrix")) {
    const Json& body = field(payload, "matrix");
    const core::CMatrix rho = io::parse_cmatrix(field(body, "rho"));
    const core::CMatrix sigma = io::parse_cmatrix(field(body, "sigma"));
    const Json& p = field(body, "p");
    if (!p.is_number_integer() || p.get<Eigen::Index>() < 1) {
      throw core::DomainError("\"p\" must be a positive integer");
    }
    disint::DisintegrationResult result;
    if (body.contains("unitary")) {
      result = disint::disintegrate_matrix_unitary_case(
          rho, sigma, p.get<Eigen::Index>(),
          io::parse_cmatrix(field(body, "unitary")), tol);
    } else {
      result = disint::disintegrate_matrix_case(rho, sigma,
                                                p.get<Eigen::Index>(), tol);
    }
    return io::to_json(result);
  }
  if (payload.contains("general")) {
    const Json& body = field(payload, "general");
    disint::DisintegrationProblem problem{
        io::parse_bratteli(field(body, "hom")),
        io::parse_state(field(body, "omega"), tol),
        io::parse_state(field(body, "xi"), tol)};
    return io::to_json(disint::disintegrate(problem, tol));
  }
  throw core::DomainError("payload needs a \"matrix\" or \"general\" problem");
}

Json run_classical(const Json& payload, const Tolerance& tol) {
  const std::vector<Eigen::Index> f = io::parse_function(field(payload, "f"));
  const classical::FinProb p = io::parse_finprob(field(payload, "p"), tol);
  const classical::FinProb q = io::parse_finprob(field(payload, "q"), tol);
  const classical::StochMap r = classical::classical_disintegration(f, p, q, tol);
  return Json{{"exists", true}, {"r", io::to_json(r)}};
}

Json run_measure(const Json& payload, const Tolerance& tol) {
  const core::CMatrix a = io::parse_cmatrix(field(payload, "observable"));
  const core::CMatrix rho = io::parse_cmatrix(field(payload, "rho"));
  const measure::Observable obs = measure::make_observable(a, tol);
  const classical::FinProb q = measure::outcome_distribution(obs, rho, tol);
  const double luders_residual =
      core::max_abs_diff(rho, measure::luders(obs, rho, tol));
  const disint::DisintegrationResult result =
      measure::measurement_disintegration(obs, rho, tol);
  return Json{{"exists", result.exists},
              {"spectrum", obs.spectrum},
              {"outcome_distribution", q.weights},
              {"luders_residual", luders_residual},
              {"map", result.map ? io::to_json(*result.map) : Json(nullptr)},
              {"tau", result.tau ? io::to_json(*result.tau) : Json(nullptr)},
              {"certificate", io::to_json(result.certificate)}};
}

Json run_compose(const Json& payload, const Tolerance&) {
  const maps::BlockMap g = io::parse_blockmap(field(payload, "g"));
  const maps::BlockMap f = io::parse_blockmap(field(payload, "f"));
  return Json{{"map", io::to_json(maps::compose(g, f))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional operator algebras, states, CP maps, and "
               "disintegrations"};
  app.require_subcommand(1);

  std::string path;
  double tolerance = 1e-9;
  static constexpr struct {
    const char* name;
    const char* description;
  } kCommands[] = {
      {"check-map", "Report CP, unitality, and homomorphism verdicts"},
      {"ae-equal", "Compare two maps up to a reference state's null space"},
      {"disintegrate", "Decide existence and construct the disintegration"},
      {"classical", "Conditional kernel for a finite probability problem"},
      {"measure", "Spectral measurement pipeline for an observable"},
      {"compose", "Compose two maps given in Choi form"},
  };
  for (const auto& command : kCommands) {
    CLI::App* sub = app.add_subcommand(command.name, command.description);
    sub->add_option("file", path, "JSON problem file")->required();
    sub->add_option("--tolerance", tolerance,
                    "Equality tolerance; rank cutoff scales along (default 1e-9)")
        ->envname("NCDISINT_TOLERANCE");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string kind = app.get_subcommands().front()->get_name();

  try {
    Tolerance tol = Tolerance{}.scaled(tolerance / 1e-9);
    tol.validate();
    const io::ProblemFile problem = io::parse_problem(io::load_file(path));
    if (problem.kind != kind) {
      throw core::DomainError("problem file has kind \"" + problem.kind +
                              "\", expected \"" + kind + "\"");
    }
    Json out;
    if (kind == "check-map") {
      out = run_check_map(problem.payload, tol);
    } else if (kind == "ae-equal") {
      out = run_ae_equal(problem.payload, tol);
    } else if (kind == "disintegrate") {
      out = run_disintegrate(problem.payload, tol);
    } else if (kind == "classical") {
      out = run_classical(problem.payload, tol);
    } else if (kind == "measure") {
      out = run_measure(problem.payload, tol);
    } else {
      out = run_compose(problem.payload, tol);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const core::IllPosedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
