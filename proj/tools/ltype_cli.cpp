#include "ltype/census.hpp"
#include "ltype/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace ltype;

namespace {

struct Globals {
  std::size_t threads = 1;
  bool strict_balinski = false;
  bool resume = false;
};

AdOptions ad_options(const Globals& g) {
  AdOptions opt;
  opt.strict_balinski = g.strict_balinski;
  return opt;
}

std::string format_form(const QuadForm& q) {
  std::ostringstream out;
  std::vector<std::vector<std::string>> cells(q.dim, std::vector<std::string>(q.dim));
  std::vector<std::size_t> width(q.dim, 0);
  for (std::size_t i = 0; i < q.dim; ++i)
    for (std::size_t j = 0; j < q.dim; ++j) {
      cells[i][j] = q.m(i, j).get_str();
      width[j] = std::max(width[j], cells[i][j].size());
    }
  for (std::size_t i = 0; i < q.dim; ++i) {
    out << "  [";
    for (std::size_t j = 0; j < q.dim; ++j)
      out << (j ? " " : "") << std::string(width[j] - cells[i][j].size(), ' ') << cells[i][j];
    out << "]\n";
  }
  return out.str();
}

QuadForm load_form(const std::string& path) { return io::form_from(io::read_json(path)); }

CensusState load_state(const std::string& path, std::size_t expect_dim) {
  CensusState st = io::census_from(io::read_json(path));
  if (expect_dim != 0 && st.dim != expect_dim)
    throw std::runtime_error(path + ": state has dimension " + std::to_string(st.dim) +
                             ", expected " + std::to_string(expect_dim));
  return st;
}

void save_state(const std::string& path, const CensusState& st) {
  io::write_json_atomic(path, io::census_json(st));
}

void print_state_summary(const CensusState& st) {
  std::size_t degenerate = 0, pending = 0;
  for (const DomainRecord& dom : st.domains)
    for (const NeighborLink& l : dom.neighbors) {
      if (l.kind == NeighborLink::Kind::Degenerate) ++degenerate;
      if (l.kind == NeighborLink::Kind::Pending) ++pending;
    }
  std::cout << "dim " << st.dim << ": " << st.domains.size() << " domain(s), "
            << (st.complete ? "complete" : "incomplete") << ", " << degenerate
            << " degenerate facet(s), " << pending << " pending facet(s)\n";
}

int cmd_enumerate(const Globals& g, std::size_t dim, std::size_t max_domains,
                  const std::string& out) {
  CensusState st;
  if (g.resume) {
    st = load_state(out, dim);
    resume_enumeration(st, max_domains);
  } else {
    st = enumerate_domains(dim, max_domains);
  }
  save_state(out, st);
  print_state_summary(st);
  return 0;
}

int cmd_rays(const Globals& g, const std::string& state_path, std::optional<std::size_t> domain) {
  CensusState st = load_state(state_path, 0);
  AdOptions opt = ad_options(g);
  if (domain) {
    if (*domain >= st.domains.size())
      throw std::runtime_error("no domain with id " + std::to_string(*domain));
    domain_rays(st, *domain, opt);
  } else {
    all_domain_rays(st, opt);
  }
  save_state(state_path, st);
  for (const DomainRecord& dom : st.domains) {
    if (domain && dom.id != *domain) continue;
    if (!dom.rays) {
      std::cout << "domain " << dom.id << ": rays not computed\n";
      continue;
    }
    std::cout << "domain " << dom.id << ": " << dom.cone.facets.size() << " facets, "
              << dom.rays->total_rays() << " extreme rays in " << dom.rays->orbits.size()
              << " orbit(s), ranks";
    for (const auto& kv : dom.rank_profile) std::cout << " " << kv.first << ":" << kv.second;
    std::cout << "\n";
  }
  return 0;
}

int cmd_rigid(const Globals&, std::size_t dim, const std::string& state_path) {
  CensusState st;
  if (!state_path.empty()) {
    st = load_state(state_path, dim);
  } else {
    st = enumerate_domains(dim);
  }
  const std::vector<QuadForm>& reps = rigid_census(st);
  if (!state_path.empty()) save_state(state_path, st);
  std::cout << reps.size() << " rigid form(s) up to arithmetic equivalence\n";
  for (std::size_t k = 0; k < reps.size(); ++k)
    std::cout << "rigid " << k << ":\n" << format_form(reps[k]);
  return 0;
}

int cmd_tables(const Globals&, std::size_t dim, const std::string& state_path,
               const std::string& format, const std::string& out) {
  CensusState st;
  if (!state_path.empty()) {
    st = load_state(state_path, dim);
  } else {
    st = enumerate_domains(dim);
  }
  DistributionTables t = distribution_tables(st);
  if (!state_path.empty()) save_state(state_path, st);
  std::string text;
  for (const io::Table& tab : io::distribution_output(t))
    text += (format == "csv" ? io::to_csv(tab) : io::to_aligned(tab)) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_text_atomic(out, text);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_tree_check(const Globals&, std::size_t dim, const std::string& state_path) {
  CensusState st;
  if (!state_path.empty()) {
    st = load_state(state_path, dim);
  } else {
    st = enumerate_domains(dim);
  }
  TreeReport r = tree_check(st);
  std::cout << "domains " << r.domains << ", ridges " << r.ridges << ", without degenerate ray "
            << r.bad << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
  return r.pass ? 0 : 1;
}

int cmd_check_rigid(const Globals&, const std::string& form_path) {
  QuadForm q = load_form(form_path);
  std::size_t deg = rigidity_degree(q);
  std::cout << "rigidity degree " << deg << (deg == 1 ? " (rigid)" : "") << "\n";
  return 0;
}

int cmd_equiv(const Globals&, const std::string& a_path, const std::string& b_path) {
  QuadForm a = load_form(a_path);
  QuadForm b = load_form(b_path);
  if (a.dim != b.dim) {
    std::cout << "not equivalent: dimensions differ\n";
    return 1;
  }
  std::optional<MatI> u = find_isometry(a, b);
  if (!u) {
    std::cout << "not equivalent\n";
    return 1;
  }
  std::cout << "equivalent: B = U^T A U with U =\n";
  for (std::size_t i = 0; i < u->nr; ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < u->nc; ++j) std::cout << (j ? " " : "") << (*u)(i, j).get_str();
    std::cout << "]\n";
  }
  return 0;
}

int cmd_dv(const Globals&, const std::string& form_path, const std::string& out) {
  QuadForm q = load_form(form_path);
  VPolytope p = dv_polytope_ambient(q);
  std::cout << "Dirichlet-Voronoi polytope: " << p.vertices.size() << " vertices in dimension "
            << p.ambient << " (form rank " << rank(q) << ")\n";
  if (!out.empty()) {
    io::write_json_atomic(out, io::polytope_json(p));
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_dd(const Globals& g, const std::string& cone_path, const std::string& group_path,
           bool use_ad, const std::string& out, const std::string& snapshot,
           std::size_t snapshot_every) {
  io::HConeFile hf = io::hcone_from(io::read_json(cone_path));
  if (!group_path.empty()) hf.group = io::group_from(io::read_json(group_path));
  OrbitRegistry reg;
  if (use_ad) {
    SymmetryAction act;
    act.ambient = hf.cone.ambient;
    act.generators = hf.group;
    AdOptions opt = ad_options(g);
    OrbitRegistry prev;
    if (g.resume && !snapshot.empty()) {
      prev = io::registry_from(io::read_json(snapshot));
      opt.resume_from = &prev;
    }
    if (!snapshot.empty()) {
      opt.snapshot_every = snapshot_every;
      opt.snapshot = [&snapshot](const OrbitRegistry& r) {
        io::write_json_atomic(snapshot, io::registry_json(r));
      };
    }
    reg = adjacency_decomposition(hf.cone, act, opt);
    std::cout << reg.orbits.size() << " orbit(s), " << reg.total_rays() << " extreme ray(s)"
              << (reg.early_stopped ? ", early stop by connectivity bound" : "") << "\n";
  } else {
    std::vector<Ray> rays = dual_description(hf.cone);
    reg.ambient = hf.cone.ambient;
    reg.complete = true;
    for (Ray& r : rays) {
      OrbitRecord o;
      o.rep = std::move(r);
      o.treated = true;
      reg.orbits.push_back(std::move(o));
    }
    std::cout << reg.orbits.size() << " extreme ray(s)\n";
    for (const OrbitRecord& o : reg.orbits) {
      std::cout << " ";
      for (const Int& x : o.rep.dir) std::cout << " " << x.get_str();
      std::cout << "\n";
    }
  }
  if (!out.empty()) {
    io::write_json_atomic(out, io::registry_json(reg));
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_verify_dim6(const Globals&, bool minkowski) {
  bool all = true;
  for (const CheckResult& c : verify_dim6_forms(minkowski)) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " -- " << c.detail << "\n";
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact enumeration of L-type domains of positive definite quadratic forms"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--threads", g.threads, "worker thread bound (the engine currently runs on one)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--strict-balinski", g.strict_balinski,
               "tighten the connectivity cutoff by one orbit before early-stopping ray searches");
  app.add_flag("--resume", g.resume, "continue from the state or snapshot file if it exists");

  std::size_t dim = 0, max_domains = 0, domain_id = 0, snapshot_every = 1;
  bool have_domain = false, use_ad = false, minkowski = false;
  std::string out, state_path, form_path, a_path, b_path, cone_path, group_path, snapshot;
  std::string format = "text";

  CLI::App* enumerate = app.add_subcommand("enumerate", "walk the flip graph of a dimension");
  enumerate->add_option("--dim", dim, "lattice dimension (1..6)")->required();
  enumerate->add_option("--max-domains", max_domains, "stop before inserting past this many");
  enumerate->add_option("--out", out, "census state file (.json or .json.gz)")->required();

  CLI::App* rays = app.add_subcommand("rays", "extreme rays of enumerated domains");
  rays->add_option("--state", state_path, "census state file")->required();
  CLI::Option* opt_domain = rays->add_option("--domain", domain_id, "only this domain id");

  CLI::App* rigid = app.add_subcommand("rigid", "rigid forms of a dimension up to equivalence");
  rigid->add_option("--dim", dim, "lattice dimension")->required();
  rigid->add_option("--state", state_path, "census state file (enumerates in memory when absent)");

  CLI::App* tables = app.add_subcommand("tables", "facet, ray and rank distributions");
  tables->add_option("--dim", dim, "lattice dimension")->required();
  tables->add_option("--state", state_path, "census state file (enumerates in memory when absent)");
  tables->add_option("--format", format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  tables->add_option("--out", out, "write here instead of stdout");

  CLI::App* tree = app.add_subcommand("tree-check", "every ridge carries a degenerate extreme ray");
  tree->add_option("--dim", dim, "lattice dimension")->required();
  tree->add_option("--state", state_path, "census state file (enumerates in memory when absent)");

  CLI::App* check_rigid = app.add_subcommand("check-rigid", "rigidity degree of one form");
  check_rigid->add_option("--form", form_path, "form file")->required();

  CLI::App* equiv = app.add_subcommand("equiv", "arithmetic equivalence of two forms");
  equiv->add_option("--a", a_path, "first form file")->required();
  equiv->add_option("--b", b_path, "second form file")->required();

  CLI::App* dv = app.add_subcommand("dv", "Dirichlet-Voronoi polytope of a form");
  dv->add_option("--form", form_path, "form file")->required();
  dv->add_option("--out", out, "polytope file to write");

  CLI::App* dd = app.add_subcommand("dd", "extreme rays of a polyhedral cone");
  dd->add_option("--cone", cone_path, "cone file")->required();
  dd->add_option("--group", group_path, "symmetry group file (overrides the cone's)");
  dd->add_flag("--adjacency-decomposition", use_ad, "orbit-wise enumeration under the group");
  dd->add_option("--out", out, "registry file to write");
  dd->add_option("--snapshot", snapshot, "registry snapshot file for resumable runs");
  dd->add_option("--snapshot-every", snapshot_every, "orbits between snapshots")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify-dim6", "checks on the built-in dimension-6 forms");
  verify->add_flag("--minkowski", minkowski, "also check the costly Minkowski sum identity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }
  have_domain = opt_domain->count() > 0;

  try {
    if (*enumerate) return cmd_enumerate(g, dim, max_domains, out);
    if (*rays) return cmd_rays(g, state_path, have_domain ? std::optional(domain_id) : std::nullopt);
    if (*rigid) return cmd_rigid(g, dim, state_path);
    if (*tables) return cmd_tables(g, dim, state_path, format, out);
    if (*tree) return cmd_tree_check(g, dim, state_path);
    if (*check_rigid) return cmd_check_rigid(g, form_path);
    if (*equiv) return cmd_equiv(g, a_path, b_path);
    if (*dv) return cmd_dv(g, form_path, out);
    if (*dd) return cmd_dd(g, cone_path, group_path, use_ad, out, snapshot, snapshot_every);
    if (*verify) return cmd_verify_dim6(g, minkowski);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
