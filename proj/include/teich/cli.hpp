#pragma once

/**
 * @file cli.hpp
 * @brief The teichtrace command line, callable in-process for tests.
 *
 * Exit codes: 0 success or true, 1 false or a violated condition, 2 usage
 * or input errors.
 */

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teich/error.hpp"
#include "teich/fricke.hpp"
#include "teich/glue.hpp"
#include "teich/io.hpp"
#include "teich/sl2.hpp"
#include "teich/spinstruct.hpp"
#include "teich/tolerance.hpp"
#include "teich/tracefn.hpp"

namespace teich::cli {

inline constexpr int kMaxDepth = 24;
inline constexpr std::uint64_t kDefaultRngSeed = 20240601;

namespace detail {

/// Seed given inline (--surface, --seed, --boundary) or as a record (--input).
struct SeedArgs {
  std::string surface;
  std::vector<double> values;
  std::vector<double> boundary;
  std::string input;

  void attach(CLI::App* cmd) {
    cmd->add_option("--surface", surface, "signature g,r,s");
    cmd->add_option("--seed", values, "traces; on a torus or four-holed sphere the values at 0/1, 1/1, 1/0")
        ->delimiter(',');
    cmd->add_option("--boundary", boundary, "boundary traces")->delimiter(',');
    cmd->add_option("--input", input, "seed record (JSON)");
  }

  SurfaceSig sig() const {
    if (surface.empty()) throw Error(ErrorCode::ParseError, "--surface is required");
    // An unsupported signature is a usage error here.
    try {
      return SurfaceSig::parse(surface);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }

  TraceSeed seed() const {
    if (!input.empty()) return seed_from_json(read_json_file(input));
    const SurfaceSig s = sig();
    if (!s.is_farey()) throw Error(ErrorCode::ParseError, "slope seeds need a torus or four-holed sphere");
    if (values.size() != 3) throw Error(ErrorCode::ParseError, "--seed needs three values");
    return TraceSeed::base(s, values[0], values[1], values[2], boundary);
  }
};

template <typename T, std::size_t N>
std::array<T, N> fixed(const std::vector<T>& v, const char* what) {
  if (v.size() != N) throw Error(ErrorCode::ParseError, std::string(what) + " needs " + std::to_string(N) + " values");
  std::array<T, N> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

/// Representation from inline traces: pants, torus, four-holed sphere, or
/// the glued two-holed torus from six coordinates.
inline Rep build_rep(const SeedArgs& a, const Tolerances& tol) {
  if (!a.input.empty() || a.sig().is_farey()) {
    const TraceSeed seed = a.seed();
    const MembershipReport m = is_member(seed, tol);
    if (!m.member) throw Error(ErrorCode::ImageViolation, m.reason);
    TraceTable<double> table = make_table(seed, tol);
    const Slope s01(0, 1), s11(1, 1), s10(1, 0);
    if (seed.surface.is_one_holed_torus()) return build_torus(table(s10), table(s01), table(s11), tol);
    const auto& b = table.boundary();
    return build_four_holed(b[0], b[1], b[2], b[3], table(s01), table(s11), table(s10), tol);
  }
  const SurfaceSig s = a.sig();
  if (s.is_pants()) {
    auto t = fixed<double, 3>(a.values, "--seed");
    // Positive values are magnitudes; the constructed lift has negative traces.
    if (t[0] > 0 && t[1] > 0 && t[2] > 0)
      for (auto& x : t) x = -x;
    return build_pants(t[0], t[1], t[2], tol);
  }
  if (s.is_two_holed_torus()) return sigma12_embed(fixed<double, 6>(a.values, "--seed"), tol).glued.rep;
  throw Error(ErrorCode::ParseError, "no constructor for signature " + s.str());
}

inline void print_rep(std::ostream& out, const Rep& rep) {
  out << "signature " << rep.sig.str() << "\n";
  for (std::size_t i = 0; i < rep.arity(); ++i) {
    const Mat& m = rep.gens[i];
    out << rep.names[i] << " = [[" << fmt(m.a11) << ", " << fmt(m.a12) << "], [" << fmt(m.a21) << ", " << fmt(m.a22)
        << "]]  tr " << fmt(m.trace()) << "\n";
  }
}

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  return out;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace coordinates of Teichmueller spaces of small surfaces", "teichtrace"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string format;
  app.add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

  Tolerances tol = Tolerances::from_env();
  std::optional<double> tol_override;
  int depth = -1;

  detail::SeedArgs seed_args;
  auto* member = app.add_subcommand("member", "image membership of a seed");
  seed_args.attach(member);
  member->add_option("--tol", tol_override, "relation tolerance");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "traces and lengths of slopes near the seed triangle");
  seed_args.attach(spectrum_cmd);
  spectrum_cmd->add_option("--depth", depth, "flips from the seed triangle")->check(CLI::Range(0, kMaxDepth));

  auto* rep_cmd = app.add_subcommand("rep", "construct a representation");
  seed_args.attach(rep_cmd);
  std::string output;
  rep_cmd->add_option("--output", output, "write the rep record to this file");

  auto* verify = app.add_subcommand("verify", "recursion against matrix word traces");
  seed_args.attach(verify);
  std::string rep_path;
  verify->add_option("--rep", rep_path, "rep record (JSON) instead of a seed");
  verify->add_option("--depth", depth, "flips from the base triangle")->check(CLI::Range(0, kMaxDepth));
  verify->add_option("--tol", tol_override, "largest accepted relative residual");

  auto* identities = app.add_subcommand("identities", "trace identities on random triples");
  std::size_t samples = 10000;
  std::uint64_t rng_seed = kDefaultRngSeed;
  identities->add_option("--samples", samples, "number of random triples");
  identities->add_option("--rng-seed", rng_seed, "generator seed");
  identities->add_option("--tol", tol_override, "largest accepted scaled residual");

  auto* glue = app.add_subcommand("glue", "amalgamate two reps along a pants group");
  std::string x_path, y_path, shared_x = "A,B", shared_y = "A,B", glued_sig;
  std::vector<double> sigma12;
  glue->add_option("--x", x_path, "first rep record");
  glue->add_option("--y", y_path, "second rep record");
  glue->add_option("--shared-x", shared_x, "pants generators as words of the first rep");
  glue->add_option("--shared-y", shared_y, "pants generators as generators of the second rep");
  glue->add_option("--surface", glued_sig, "signature of the result");
  glue->add_option("--sigma12", sigma12, "build the two-holed torus from six coordinates")->delimiter(',');
  glue->add_option("--tol", tol_override, "trace matching tolerance");
  glue->add_option("--output", output, "write the glued rep record to this file");

  auto* spin = app.add_subcommand("spin", "sign laws of the lift");
  seed_args.attach(spin);
  spin->add_option("--rep", rep_path, "rep record (JSON) instead of a seed");
  spin->add_option("--depth", depth, "Farey depth of the quadratic-law pairs")->check(CLI::Range(0, 6));
  bool liftings = false;
  spin->add_flag("--liftings", liftings, "check every lifting of the rep");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const bool json_out = format == "json";
  try {
    if (member->parsed()) {
      if (tol_override) tol.relation = *tol_override;
      // Genus two and the two-holed torus take their coordinates inline.
      if (seed_args.input.empty() && !seed_args.surface.empty()) {
        const SurfaceSig s = seed_args.sig();
        if (s.is_closed_genus_two()) {
          const Sigma2Report r = sigma2_member(detail::fixed<double, 7>(seed_args.values, "--seed"), tol);
          if (json_out)
            out << json{{"member", r.member}, {"t8", r.t8}, {"t9", r.t9}, {"residual", r.residual}, {"reason", r.reason}}.dump(2)
                << "\n";
          else
            out << "member " << (r.member ? "true" : "false") << "\nt8 " << fmt(r.t8) << "\nt9 " << fmt(r.t9)
                << "\nresidual " << fmt(r.residual) << "\n"
                << (r.member ? "" : "reason " + r.reason + "\n");
          return r.member ? 0 : 1;
        }
        if (s.is_two_holed_torus()) {
          const auto t = detail::fixed<double, 6>(seed_args.values, "--seed");
          std::string reason;
          try {
            sigma12_embed(t, tol);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::ImageViolation) throw;
            reason = e.what();
          }
          const bool ok = reason.empty();
          if (json_out)
            out << json{{"member", ok}, {"reason", reason}}.dump(2) << "\n";
          else
            out << "member " << (ok ? "true" : "false") << "\n" << (ok ? "" : "reason " + reason + "\n");
          return ok ? 0 : 1;
        }
      }
      const MembershipReport r = is_member(seed_args.seed(), tol);
      if (json_out) {
        out << json{{"member", r.member},     {"locus", r.locus},   {"reason", r.reason},
                    {"residual", r.residual}, {"margin", r.margin}, {"derived", r.diagnostic.derived}}
                   .dump(2)
            << "\n";
      } else {
        out << "member " << (r.member ? "true" : "false") << "\n";
        if (r.member) out << "locus " << r.locus << "\n";
        if (!r.reason.empty()) out << "reason " << r.reason << "\n";
        out << "residual " << fmt(r.residual) << "\nmargin " << fmt(r.margin) << "\n";
      }
      return r.member ? 0 : 1;
    }

    if (spectrum_cmd->parsed()) {
      const auto rows = spectrum(seed_args.seed(), depth < 0 ? 3 : depth, tol);
      if (json_out) {
        json j = json::array();
        for (const auto& r : rows) j.push_back({{"slope", r.slope.str()}, {"trace", r.trace}, {"length", r.length}});
        out << j.dump(2) << "\n";
      } else {
        out << "slope trace length\n";
        for (const auto& r : rows) out << r.slope.str() << " " << fmt(r.trace) << " " << fmt(r.length) << "\n";
      }
      return 0;
    }

    if (rep_cmd->parsed()) {
      const Rep rep = detail::build_rep(seed_args, tol);
      if (!output.empty()) std::ofstream(output) << to_json(rep).dump(2) << "\n";
      if (format == "table")
        detail::print_rep(out, rep);
      else
        out << to_json(rep).dump(2) << "\n";
      return 0;
    }

    if (verify->parsed()) {
      const double limit = tol_override.value_or(1e-8);
      const int d = depth < 0 ? 6 : depth;
      const CrossValidation cv =
          rep_path.empty() ? cross_validate(seed_args.seed(), d, tol) : cross_validate(rep_from_json(read_json_file(rep_path)), d, tol);
      const bool ok = cv.max_residual <= limit;
      const bool four = cv.rep.sig.is_four_holed_sphere();
      if (json_out) {
        json j{{"ok", ok}, {"max_residual", cv.max_residual}, {"worst", cv.worst.str()}, {"compared", cv.compared}};
        if (four) j["max_identity_residual"] = cv.max_identity_residual;
        out << j.dump(2) << "\n";
      } else {
        out << "compared " << cv.compared << " slopes to depth " << d << "\nmax residual " << fmt(cv.max_residual)
            << " at " << cv.worst.str() << "\n";
        if (four) out << "max identity residual " << fmt(cv.max_identity_residual) << "\n";
        out << (ok ? "ok" : "FAILED") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (identities->parsed()) {
      const double limit = tol_override.value_or(tol.identity);
      const IdentitySuite s = run_identity_suite(samples, rng_seed);
      const bool ok = s.max_residual <= limit;
      if (json_out)
        out << json{{"ok", ok}, {"rng_seed", rng_seed}, {"samples", s.samples}, {"max_residual", s.max_residual},
                    {"worst_sample", s.worst_sample}}
                   .dump(2)
            << "\n";
      else
        out << "rng seed " << rng_seed << "\nsamples " << s.samples << "\nmax residual " << fmt(s.max_residual)
            << " (sample " << s.worst_sample << ")\n"
            << (ok ? "ok" : "FAILED") << "\n";
      return ok ? 0 : 1;
    }

    if (glue->parsed()) {
      if (tol_override) tol.glue = *tol_override;
      if (!sigma12.empty()) {
        const Sigma12Embedding e = sigma12_embed(detail::fixed<double, 6>(sigma12, "--sigma12"), tol);
        if (!output.empty()) std::ofstream(output) << to_json(e.glued.rep).dump(2) << "\n";
        if (format == "table") {
          detail::print_rep(out, e.glued.rep);
          const auto w = Sigma12Embedding::words();
          for (int i = 0; i < 6; ++i) out << "t" << i + 1 << " " << w[i] << " " << fmt(e.coordinates[i]) << "\n";
          out << "t7 printed " << fmt(e.t7_printed) << (e.printed_consistent ? " (matches rep)" : "") << "\n";
          out << "t7 relation " << fmt(e.t7_relation) << (e.relation_consistent ? " (matches rep)" : "") << "\n";
        } else {
          json j{{"rep", to_json(e.glued.rep)},
                 {"coordinates", e.coordinates},
                 {"words", Sigma12Embedding::words()},
                 {"t7_printed", e.t7_printed},
                 {"t7_relation", e.t7_relation},
                 {"t7_from_rep", e.t7_from_rep},
                 {"printed_consistent", e.printed_consistent},
                 {"relation_consistent", e.relation_consistent}};
          out << j.dump(2) << "\n";
        }
        return 0;
      }
      if (x_path.empty() || y_path.empty()) throw Error(ErrorCode::ParseError, "glue needs --x and --y, or --sigma12");
      GlueSpec spec{rep_from_json(read_json_file(x_path)), rep_from_json(read_json_file(y_path))};
      const auto sx = detail::split_names(shared_x), sy = detail::split_names(shared_y);
      if (sx.size() != 2 || sy.size() != 2) throw Error(ErrorCode::ParseError, "shared pairs need two entries");
      spec.shared_x = {sx[0], sx[1]};
      spec.shared_y = {sy[0], sy[1]};
      if (!glued_sig.empty()) spec.sig = SurfaceSig::parse(glued_sig);
      const GlueResult g = glue_reps(spec, tol);
      if (!output.empty()) std::ofstream(output) << to_json(g.rep).dump(2) << "\n";
      if (format == "table") {
        detail::print_rep(out, g.rep);
        for (std::size_t i = 0; i < g.y_image.size(); ++i)
          out << spec.y.names[i] << " -> " << g.y_image[i].str(g.rep.names) << "\n";
      } else {
        out << to_json(g.rep).dump(2) << "\n";
      }
      return 0;
    }

    if (spin->parsed()) {
      const Rep rep = rep_path.empty() ? detail::build_rep(seed_args, tol) : rep_from_json(read_json_file(rep_path));
      const int d = depth < 0 ? 3 : depth;
      auto laws = [&](const Rep& r) {
        SpinReport report;
        if (r.sig.is_pants()) report.records.push_back(pants_law(r));
        if (r.sig.is_one_holed_torus()) report.records.push_back(perp_law(r));
        if (r.sig.is_four_holed_sphere())
          for (auto [a, b] : {std::pair{"A", "B"}, std::pair{"B", "C"}, std::pair{"C", "A"}})
            report.records.push_back(pants_law(r, a, b));
        if (r.sig.is_farey()) {
          const SpinReport q = check_quadratic(r, all_pairs(d));
          report.records.insert(report.records.end(), q.records.begin(), q.records.end());
        }
        return report;
      };
      const std::vector<Rep> reps = liftings ? enumerate_liftings(rep) : std::vector<Rep>{rep};
      std::size_t total = 0, bad = 0, spin_lifts = 0;
      json j = json::array();
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const SpinReport r = laws(reps[i]);
        total += r.records.size();
        bad += r.violations();
        spin_lifts += r.ok() ? 1 : 0;
        for (const auto& rec : r.records) {
          if (!json_out && rec.ok()) continue;
          std::string classes;
          for (const auto& c : rec.classes) classes += (classes.empty() ? "" : " ") + c.str();
          if (json_out)
            j.push_back({{"lifting", i}, {"law", rec.law}, {"classes", classes}, {"expected", rec.expected}, {"actual", rec.actual}});
          else
            out << "lifting " << i << " " << rec.law << " [" << classes << "] expected " << rec.expected << " got "
                << rec.actual << "\n";
        }
      }
      if (json_out)
        out << json{{"checks", total}, {"violations", bad}, {"spin_liftings", spin_lifts}, {"records", j}}.dump(2) << "\n";
      else
        out << "checks " << total << "\nviolations " << bad << "\nliftings satisfying every law " << spin_lifts << " of "
            << reps.size() << "\n";
      return bad == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? 2 : 1;
  }
  return 2;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace teich::cli
