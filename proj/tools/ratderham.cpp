// Command-line surface for the library: deterministic tables or JSON on
// stdout, domain errors on stderr with exit code 1, input errors with exit
// code 2.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ratderham/errors.hpp"
#include "ratderham/griffiths.hpp"
#include "ratderham/hodge.hpp"
#include "ratderham/jacobian.hpp"
#include "ratderham/polyring.hpp"
#include "ratderham/residue.hpp"
#include "ratderham/specseq.hpp"

namespace {

using nlohmann::json;
using namespace ratderham;

struct FArgs {
  long n = 0;
  long d = 0;  // 0 = not given
  std::string f_text;
  std::string f_file;
  bool json_out = false;
};

void add_f_options(CLI::App* cmd, FArgs& args, bool need_f = true) {
  cmd->add_option("--n", args.n, "dimension of the hypersurface Y (ambient space has dimension n+1)")
      ->required();
  cmd->add_option("--d", args.d, "degree of the defining polynomial");
  if (need_f) {
    cmd->add_option("--f", args.f_text, "defining polynomial: \"fermat\" or inline text");
    cmd->add_option("--f-file", args.f_file, "file containing the defining polynomial");
  }
  cmd->add_flag("--json", args.json_out, "emit JSON instead of a table");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ContextPtr build_from_args(const FArgs& args, std::string& f_description) {
  if (args.n < 1) throw InputError("--n must be >= 1");
  if (!args.f_text.empty() && !args.f_file.empty()) {
    throw InputError("give exactly one of --f and --f-file");
  }
  if (args.f_text.empty() && args.f_file.empty()) {
    throw InputError("a defining polynomial is required (--f or --f-file)");
  }
  const std::size_t nvars = static_cast<std::size_t>(args.n) + 2;
  GradedPoly f;
  if (args.f_text == "fermat") {
    if (args.d < 1) throw InputError("builtin \"fermat\" requires --d >= 1");
    f = fermat_poly(nvars, args.d);
    f_description = "fermat";
  } else {
    const std::string text = args.f_text.empty() ? read_file(args.f_file) : args.f_text;
    f = parse_poly(text, nvars);
    f_description = format_poly(f);
  }
  if (args.d >= 1 && f.degree() != args.d) {
    throw DegreeMismatch("--d does not match the degree of f", args.d, f.degree());
  }
  return build_context(args.n, f);
}

FormSum parse_form_sum(const ContextPtr& ctx, const std::string& text) {
  FormSum sum(ctx);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string piece = text.substr(start, end - start);
    const std::size_t colon = piece.rfind(':');
    if (colon == std::string::npos) {
      throw InputError("form piece \"" + piece + "\" is not NUMERATOR:POLEORDER");
    }
    long pole_order = 0;
    try {
      pole_order = std::stol(piece.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("bad pole order in \"" + piece + "\"");
    }
    const GradedPoly numerator = parse_poly(piece.substr(0, colon), ctx->nvars());
    sum.add(make_form(ctx, numerator, pole_order));
    start = end + 1;
    if (end == text.size()) break;
  }
  return sum;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json context_json(const HypersurfaceContext& ctx,
                  const std::string& f_description, const std::string& command) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["n"] = ctx.n();
  j["d"] = ctx.d();
  j["f"] = f_description;
  j["socle_degree"] = ctx.socle_degree();
  return j;
}

void print_context_line(const HypersurfaceContext& ctx, const std::string& f_description) {
  std::cout << "hypersurface: n=" << ctx.n() << " d=" << ctx.d() << " f=" << f_description
            << "\n";
  std::cout << "smooth: yes (socle degree " << ctx.socle_degree() << ")\n";
}

int cmd_hodge(const FArgs& args) {
  std::string f_description;
  const ContextPtr ctx = build_from_args(args, f_description);
  const PrimitiveHodgeNumbers h = primitive_hodge_numbers(*ctx);
  const std::vector<std::int64_t> filtration = hodge_filtration_dims(*ctx);
  const std::vector<std::int64_t> betti = betti_table(*ctx);
  const Int chi = euler_characteristic(ctx->n(), ctx->d());
  const ConsistencyReport report = consistency_report(*ctx);

  if (args.json_out) {
    json j = context_json(*ctx, f_description, "hodge");
    j["primitive_hodge_numbers"] = h.entries;
    j["hodge_filtration_dims"] = filtration;
    j["betti"] = betti;
    j["euler_characteristic"] = chi.get_str();
    json checks = json::array();
    for (const ConsistencyCheck& c : report.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    }
    j["consistency"] = std::move(checks);
    j["all_consistency_pass"] = report.all_pass();
    emit(j);
  } else {
    print_context_line(*ctx, f_description);
    std::cout << "primitive hodge numbers:";
    for (long j = 1; j <= ctx->n() + 1; ++j) {
      std::cout << " h^{" << (ctx->n() + 1 - j) << "," << (j - 1) << "}=" << h.entries[j - 1];
    }
    std::cout << "\nhodge filtration dims of H^" << ctx->n() << "(Y)_0:";
    for (std::size_t k = 0; k < filtration.size(); ++k) std::cout << " F^" << k << "=" << filtration[k];
    std::cout << "\nbetti numbers:";
    for (std::size_t q = 0; q < betti.size(); ++q) std::cout << " b_" << q << "=" << betti[q];
    std::cout << "\neuler characteristic: " << chi.get_str() << "\n";
    std::cout << "consistency:\n";
    for (const ConsistencyCheck& c : report.checks) {
      std::cout << "  " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (" << c.details
                << ")\n";
    }
  }
  return 0;
}

json components_json(const std::map<long, GradedPoly>& components) {
  json j = json::object();
  for (const auto& [pole, rep] : components) j[std::to_string(pole)] = format_poly(rep);
  return j;
}

int cmd_reduce(const FArgs& args, const std::string& form_text, bool verdict_only) {
  std::string f_description;
  const ContextPtr ctx = build_from_args(args, f_description);
  const FormSum sum = parse_form_sum(ctx, form_text);
  const NormalForm nf = normal_form(sum);
  const bool exact = nf.is_zero();

  if (args.json_out) {
    json j = context_json(*ctx, f_description, verdict_only ? "exact" : "reduce");
    j["form"] = form_text;
    if (!verdict_only) j["normal_form"] = components_json(nf.components());
    j["exact"] = exact;
    j["second_kind"] = exact;
    j["second_kind_reason"] = second_kind_justification(*ctx);
    emit(j);
  } else {
    print_context_line(*ctx, f_description);
    if (!verdict_only) {
      std::cout << "normal form components:\n";
      if (nf.is_zero()) {
        std::cout << "  (all components zero)\n";
      } else {
        for (const auto& [pole, rep] : nf.components()) {
          std::cout << "  pole order " << pole << ": " << format_poly(rep) << "\n";
        }
      }
    }
    std::cout << "verdict: " << (exact ? "exact" : "not exact") << "\n";
    std::cout << "second kind: " << (exact ? "yes" : "no") << "\n";
    std::cout << "  (" << second_kind_justification(*ctx) << ")\n";
  }
  return 0;
}

int cmd_residue(const FArgs& args, const std::string& form_text) {
  std::string f_description;
  const ContextPtr ctx = build_from_args(args, f_description);
  const FormSum sum = parse_form_sum(ctx, form_text);
  const ResidueClass cls = residue(sum);

  if (args.json_out) {
    json j = context_json(*ctx, f_description, "residue");
    j["form"] = form_text;
    json comps = json::array();
    for (const auto& [pole, rep] : cls.components()) {
      const HodgeType t = cls.type_of(pole);
      comps.push_back({{"pole_order", pole},
                       {"hodge_type", {t.p, t.q}},
                       {"representative", format_poly(rep)}});
    }
    j["components"] = std::move(comps);
    j["zero"] = cls.is_zero();
    j["filtration_level"] = cls.filtration_level();
    emit(j);
  } else {
    print_context_line(*ctx, f_description);
    std::cout << "residue class components:\n";
    if (cls.is_zero()) {
      std::cout << "  (zero class)\n";
    } else {
      for (const auto& [pole, rep] : cls.components()) {
        const HodgeType t = cls.type_of(pole);
        std::cout << "  pole order " << pole << " -> hodge type (" << t.p << "," << t.q
                  << "): " << format_poly(rep) << "\n";
      }
    }
    std::cout << "zero: " << (cls.is_zero() ? "yes" : "no") << "\n";
    std::cout << "filtration level: F^" << cls.filtration_level() << "\n";
  }
  return 0;
}

int cmd_thm41(const FArgs& args) {
  std::string f_description;
  const ContextPtr ctx = build_from_args(args, f_description);
  std::vector<FiltrationDecomposition> rows;
  for (long k = 0; k <= ctx->n(); ++k) rows.push_back(filtration_decomposition(*ctx, k));

  if (args.json_out) {
    json j = context_json(*ctx, f_description, "thm41");
    json list = json::array();
    for (const FiltrationDecomposition& row : rows) {
      list.push_back({{"k", row.k},
                      {"lhs", row.lhs},
                      {"residue_term", row.residue_term},
                      {"ambient_term", row.ambient_term},
                      {"equal", row.equal}});
    }
    j["decompositions"] = std::move(list);
    emit(j);
  } else {
    print_context_line(*ctx, f_description);
    for (const FiltrationDecomposition& row : rows) {
      std::cout << "k=" << row.k << ": dim F^" << row.k << " H^" << ctx->n() << "(Y)_0 = "
                << row.lhs << " = " << row.residue_term << " (residue image) + "
                << row.ambient_term << " (ambient primitive part)  ["
                << (row.equal ? "PASS" : "FAIL") << "]\n";
    }
  }
  return 0;
}

int cmd_complement(const FArgs& args) {
  std::string f_description;
  const ContextPtr ctx = build_from_args(args, f_description);
  const ComplementCohomology cc = complement_cohomology(*ctx);

  if (args.json_out) {
    json j = context_json(*ctx, f_description, "complement");
    j["dims"] = cc.dims;
    j["weights_on_top"] = {{std::to_string(cc.n + 1), cc.weight_top_minus_one},
                           {std::to_string(cc.n + 2), cc.weight_top}};
    j["filtration_dims"] = cc.filtration_dims;
    emit(j);
  } else {
    print_context_line(*ctx, f_description);
    std::cout << "dim H^q(X-Y):";
    for (std::size_t q = 0; q < cc.dims.size(); ++q) std::cout << " q=" << q << ": " << cc.dims[q];
    std::cout << " (0 for q > " << cc.n + 1 << ")\n";
    std::cout << "weights on H^" << cc.n + 1 << ": weight " << cc.n + 1 << ": "
              << cc.weight_top_minus_one << ", weight " << cc.n + 2 << ": " << cc.weight_top
              << "\n";
    std::cout << "hodge filtration dims on H^" << cc.n + 1 << ":";
    for (std::size_t k = 0; k < cc.filtration_dims.size(); ++k) {
      std::cout << " F^" << k << "=" << cc.filtration_dims[k];
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_specseq(const std::string& input_path, bool with_les, bool json_out) {
  const FilteredComplex fc = parse_filtered_complex(read_file(input_path));
  const long degen = degeneration_page(fc);
  const std::vector<std::size_t> cohomology = cohomology_dims(fc.complex);

  if (json_out) {
    json j;
    j["schema_version"] = 1;
    j["command"] = "specseq";
    j["degrees"] = {fc.complex.min_degree, fc.complex.max_degree};
    j["dims"] = fc.complex.dims;
    j["cohomology_dims"] = cohomology;
    j["degeneration_page"] = degen;
    json pages = json::array();
    for (long r = 1; r <= degen; ++r) {
      const SpectralPage pg = page(fc, r);
      json entries = json::array();
      for (const auto& [pq, dim] : pg.entries) {
        if (dim > 0) entries.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", dim}});
      }
      json diffs = json::array();
      for (const auto& [pq, d] : pg.differentials) {
        const std::size_t rank = rref(d).rank;
        if (rank > 0) diffs.push_back({{"p", pq.first}, {"q", pq.second}, {"rank", rank}});
      }
      pages.push_back({{"r", r}, {"entries", entries}, {"differential_ranks", diffs}});
    }
    j["pages"] = std::move(pages);
    if (with_les) {
      const TwoTermLesReport report = two_term_les(fc);
      json nodes = json::array();
      for (const LesNode& node : report.nodes) {
        nodes.push_back({{"name", node.name},
                         {"dim", node.dim},
                         {"rank_in", node.rank_in},
                         {"rank_out", node.rank_out},
                         {"exact", node.exact}});
      }
      j["two_term_les"] = {{"nodes", nodes}, {"all_exact", report.all_exact}};
    }
    emit(j);
  } else {
    std::cout << "degrees: [" << fc.complex.min_degree << "," << fc.complex.max_degree
              << "], dims:";
    for (std::size_t d : fc.complex.dims) std::cout << " " << d;
    std::cout << ", filtration length: " << fc.filtration_length() << "\n";
    std::cout << "cohomology dims:";
    for (std::size_t i = 0; i < cohomology.size(); ++i) {
      std::cout << " H^" << (fc.complex.min_degree + static_cast<long>(i)) << "="
                << cohomology[i];
    }
    std::cout << "\n";
    for (long r = 1; r <= degen; ++r) {
      const SpectralPage pg = page(fc, r);
      std::cout << "page " << r << ":\n";
      bool any = false;
      for (const auto& [pq, dim] : pg.entries) {
        if (dim == 0) continue;
        any = true;
        std::cout << "  E[p=" << pq.first << ",q=" << pq.second << "] = " << dim << "\n";
      }
      if (!any) std::cout << "  (no nonzero entries)\n";
      bool any_diff = false;
      for (const auto& [pq, d] : pg.differentials) {
        const std::size_t rank = rref(d).rank;
        if (rank == 0) continue;
        any_diff = true;
        const auto [tp, tq] = pg.target_of(pq.first, pq.second);
        std::cout << "  d_" << r << " (" << pq.first << "," << pq.second << ") -> (" << tp << ","
                  << tq << "): rank " << rank << "\n";
      }
      if (!any_diff) std::cout << "  all page differentials are zero\n";
    }
    std::cout << "degeneration page: " << degen << "\n";
    if (with_les) {
      const TwoTermLesReport report = two_term_les(fc);
      std::cout << "two-term long exact sequence (W0 -> K -> K/W0):\n";
      for (const LesNode& node : report.nodes) {
        std::cout << "  " << node.name << ": dim " << node.dim << ", rank in " << node.rank_in
                  << ", rank out " << node.rank_out << ", "
                  << (node.exact ? "exact" : "NOT exact") << "\n";
      }
      std::cout << "all nodes exact: " << (report.all_exact ? "yes" : "no") << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational De Rham cohomology of smooth hypersurface complements"};
  app.require_subcommand(1);

  FArgs hodge_args;
  CLI::App* hodge_cmd =
      app.add_subcommand("hodge", "primitive Hodge numbers, filtration, Betti table, consistency");
  add_f_options(hodge_cmd, hodge_args);

  FArgs reduce_args;
  std::string reduce_form;
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "normal form of a sum A/f^k of top forms");
  add_f_options(reduce_cmd, reduce_args);
  reduce_cmd->add_option("--form", reduce_form, "NUMERATOR:POLEORDER[,NUMERATOR:POLEORDER...]")
      ->required();

  FArgs exact_args;
  std::string exact_form;
  CLI::App* exact_cmd = app.add_subcommand("exact", "exactness / second-kind verdict for a form sum");
  add_f_options(exact_cmd, exact_args);
  exact_cmd->add_option("--form", exact_form, "NUMERATOR:POLEORDER[,NUMERATOR:POLEORDER...]")
      ->required();

  FArgs residue_args;
  std::string residue_form;
  CLI::App* residue_cmd = app.add_subcommand("residue", "residue class with Hodge types");
  add_f_options(residue_cmd, residue_args);
  residue_cmd->add_option("--form", residue_form, "NUMERATOR:POLEORDER[,NUMERATOR:POLEORDER...]")
      ->required();

  FArgs thm41_args;
  CLI::App* thm41_cmd =
      app.add_subcommand("thm41", "filtration decomposition of primitive middle cohomology");
  add_f_options(thm41_cmd, thm41_args);

  FArgs complement_args;
  CLI::App* complement_cmd = app.add_subcommand("complement", "cohomology of the complement X-Y");
  add_f_options(complement_cmd, complement_args);

  std::string specseq_input;
  bool specseq_les = false;
  bool specseq_json = false;
  CLI::App* specseq_cmd =
      app.add_subcommand("specseq", "spectral sequence of a filtered complex from a JSON file");
  specseq_cmd->add_option("--input", specseq_input, "JSON file with the filtered complex")
      ->required();
  specseq_cmd->add_flag("--les", specseq_les, "also report the two-term long exact sequence");
  specseq_cmd->add_flag("--json", specseq_json, "emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (hodge_cmd->parsed()) return cmd_hodge(hodge_args);
    if (reduce_cmd->parsed()) return cmd_reduce(reduce_args, reduce_form, false);
    if (exact_cmd->parsed()) return cmd_reduce(exact_args, exact_form, true);
    if (residue_cmd->parsed()) return cmd_residue(residue_args, residue_form);
    if (thm41_cmd->parsed()) return cmd_thm41(thm41_args);
    if (complement_cmd->parsed()) return cmd_complement(complement_args);
    if (specseq_cmd->parsed()) return cmd_specseq(specseq_input, specseq_les, specseq_json);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
