#include <stdexcept>

#include "bhs/harness.hpp"

namespace bhs::harness {

namespace {

AuditReport merge_cases(const std::vector<DynamicCase>& cases, const std::vector<Check>& checks) {
  AuditReport rep = empty_report(checks);
  for (const auto& c : cases) rep.merge(c.report);
  return rep;
}

}  // namespace

AuditReport verify_exhaustive(const SuiteOptions& opt) {
  AuditReport rep = empty_report({Check::correctness, Check::deaths});
  for (const auto& g : small_graphs(4)) {
    for (NodeId bh = 0; bh < g.fp->node_count(); ++bh) {
      for (int s = 1; s <= opt.exhaustive_seeds; ++s) {
        ExhaustiveJob job;
        job.graph = g;
        job.black_hole = bh;
        job.placement = scatter_agents(*g.fp, bh, 2 * g.fp->degree(bh) + 17, static_cast<std::uint64_t>(s));
        job.horizon = opt.exhaustive_horizon;
        job.node_budget = opt.exhaustive_budget;
        AuditReport r = oracle_exhaustive(job);
        if (r.incomplete) r.notes.back() += " (bh=" + std::to_string(bh) + " seed=" + std::to_string(s) + ")";
        rep.merge(r);
      }
    }
  }
  return rep;
}

AuditReport verify_scattered(const SuiteOptions& opt) {
  AuditReport rep = merge_cases(run_dynamic_all(corpus_jobs(opt.seeds), all_checks(), opt.threads), all_checks());
  if (opt.exhaustive) rep.merge(verify_exhaustive(opt));
  return rep;
}

AuditReport verify_rooted(const SuiteOptions& opt) {
  return merge_cases(run_dynamic_all(rooted_jobs(), rooted_checks(), opt.threads), rooted_checks());
}

AuditReport verify_ebhs(const SuiteOptions& opt) {
  AuditReport rep = empty_report(ebhs_checks());
  for (const auto& g : corpus()) {
    EbhsJob job{g, 0, BackendKind::dfs, opt.ebhs_periods};
    rep.merge(oracle_ebhs(job));
  }
  return rep;
}

AuditReport verify_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "scattered") return verify_scattered(opt);
  if (name == "exhaustive") return verify_exhaustive(opt);
  if (name == "rooted") return verify_rooted(opt);
  if (name == "ebhs") return verify_ebhs(opt);
  if (name == "all") {
    AuditReport rep = verify_scattered(opt);
    rep.merge(verify_rooted(opt));
    rep.merge(verify_ebhs(opt));
    return rep;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace bhs::harness
