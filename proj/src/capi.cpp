#include "fendec/fendec.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>

#include "gen.hpp"
#include "isg.hpp"
#include "model.hpp"
#include "sfd.hpp"

struct fendec_instance {
  fendec::TwoStageInstance inst;
};

struct fendec_report {
  fendec::SolveReport report;
};

struct fendec_isg_trace {
  fendec::IsgResult result;
};

namespace {

thread_local std::string g_last_error;

fendec_status fail(fendec_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Maps exceptions escaping the core onto status codes.
template <class F>
fendec_status guarded(F&& body) {
  try {
    return body();
  } catch (const fendec::ParseError& e) {
    return fail(FENDEC_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FENDEC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FENDEC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FENDEC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FENDEC_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
size_t copy_out(const std::vector<T>& v, T* buf, size_t cap) {
  if (buf) std::copy_n(v.begin(), std::min(cap, v.size()), buf);
  return v.size();
}

fendec_solve_status to_c(fendec::SolveStatus s) {
  switch (s) {
    case fendec::SolveStatus::Optimal: return FENDEC_SOLVE_OPTIMAL;
    case fendec::SolveStatus::Budget: return FENDEC_SOLVE_BUDGET;
    case fendec::SolveStatus::Failed: return FENDEC_SOLVE_FAILED;
  }
  return FENDEC_SOLVE_FAILED;
}

}  // namespace

extern "C" {

const char* fendec_version(void) { return FENDEC_VERSION; }

const char* fendec_last_error(void) { return g_last_error.c_str(); }

const char* fendec_status_string(fendec_status s) {
  switch (s) {
    case FENDEC_OK: return "ok";
    case FENDEC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FENDEC_ERR_IO: return "i/o error";
    case FENDEC_ERR_PARSE: return "parse error";
    case FENDEC_ERR_VALIDATION: return "validation error";
    case FENDEC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fendec_algorithm_string(fendec_algorithm a) {
  switch (a) {
    case FENDEC_ALG_SFD: return "sfd";
    case FENDEC_ALG_SFD_R: return "sfd-r";
    case FENDEC_ALG_DIRECT: return "direct";
  }
  return "unknown";
}

void fendec_gen_config_default(fendec_gen_config* cfg) {
  if (!cfg) return;
  const fendec::GenConfig d;
  *cfg = {d.n1, d.n2, d.m1, d.m2, d.scenarios, d.v_ub, d.m_const, d.seed, d.rep};
}

fendec_status fendec_generate(const fendec_gen_config* cfg, fendec_instance** out) {
  if (!cfg || !out) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    fendec::GenConfig c;
    c.n1 = cfg->n1;
    c.n2 = cfg->n2;
    c.m1 = cfg->m1;
    c.m2 = cfg->m2;
    c.scenarios = cfg->scenarios;
    c.v_ub = cfg->v_ub;
    c.m_const = cfg->m_const;
    c.seed = cfg->seed;
    c.rep = cfg->rep;
    *out = new fendec_instance{fendec::generate(c)};
    return FENDEC_OK;
  });
}

fendec_status fendec_instance_read(const char* path, fendec_instance** out) {
  if (!path || !out) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    fendec::TwoStageInstance inst;
    try {
      inst = fendec::read_instance(path);
    } catch (const fendec::ParseError&) {
      throw;
    } catch (const std::runtime_error& e) {
      return fail(FENDEC_ERR_IO, e.what());
    }
    *out = new fendec_instance{std::move(inst)};
    return FENDEC_OK;
  });
}

fendec_status fendec_instance_parse(const char* text, const char* name, fendec_instance** out) {
  if (!text || !out) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new fendec_instance{fendec::parse_instance(text, name ? name : "")};
    return FENDEC_OK;
  });
}

fendec_status fendec_instance_write(const fendec_instance* inst, const char* path) {
  if (!inst || !path) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      fendec::write_instance(inst->inst, path);
    } catch (const std::runtime_error& e) {
      return fail(FENDEC_ERR_IO, e.what());
    }
    return FENDEC_OK;
  });
}

void fendec_instance_free(fendec_instance* inst) { delete inst; }

const char* fendec_instance_name(const fendec_instance* inst) {
  return inst ? inst->inst.name.c_str() : "";
}

fendec_status fendec_instance_dims(const fendec_instance* inst, fendec_dims* out) {
  if (!inst || !out) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  const auto& i = inst->inst;
  *out = {i.n1(), i.n2(), i.m1(), i.m2(), i.scenarios.size()};
  return FENDEC_OK;
}

fendec_status fendec_instance_validate(const fendec_instance* inst, size_t* errors,
                                       size_t* warnings) {
  if (!inst) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto findings = fendec::validate(inst->inst);
    size_t e = 0, w = 0;
    std::string first;
    for (const auto& f : findings) {
      if (f.severity == fendec::Severity::Error) {
        if (e++ == 0) first = f.message;
      } else {
        ++w;
      }
    }
    if (errors) *errors = e;
    if (warnings) *warnings = w;
    return e ? fail(FENDEC_ERR_VALIDATION, first) : FENDEC_OK;
  });
}

fendec_status fendec_instance_dep_shape(const fendec_instance* inst, size_t* rows, size_t* cols) {
  if (!inst || !rows || !cols) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& i = inst->inst;
    if (fendec::has_errors(fendec::validate(i)))
      return fail(FENDEC_ERR_VALIDATION, "instance failed validation");
    *rows = i.m1() + i.scenarios.size() * i.m2();
    *cols = i.n1() + i.scenarios.size() * i.n2();
    return FENDEC_OK;
  });
}

void fendec_solve_options_default(fendec_solve_options* opt) {
  if (!opt) return;
  const fendec::SolveOptions d;
  *opt = {d.eps, 0.0, d.iteration_limit, d.fcg.domain == fendec::BetaDomain::L1Ball,
          d.verify_reduced_cuts, d.keep_fcg_trajectories};
}

fendec_status fendec_solve(const fendec_instance* inst, fendec_algorithm alg,
                           const fendec_solve_options* opt, fendec_report** out) {
  if (!inst || !out) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (alg != FENDEC_ALG_SFD && alg != FENDEC_ALG_SFD_R && alg != FENDEC_ALG_DIRECT)
    return fail(FENDEC_ERR_INVALID_ARGUMENT, "unknown algorithm");
  fendec_solve_options o;
  fendec_solve_options_default(&o);
  if (opt) o = *opt;
  if (!(o.eps > 0.0)) return fail(FENDEC_ERR_INVALID_ARGUMENT, "eps must be positive");
  return guarded([&] {
    if (fendec::has_errors(fendec::validate(inst->inst)))
      return fail(FENDEC_ERR_VALIDATION, "instance failed validation");
    fendec::SolveOptions so;
    so.eps = o.eps;
    so.time_limit_seconds = o.time_limit_seconds > 0.0 ? o.time_limit_seconds
                                                       : std::numeric_limits<double>::infinity();
    so.iteration_limit = o.iteration_limit;
    so.fcg.domain = o.l1_domain ? fendec::BetaDomain::L1Ball : fendec::BetaDomain::Box;
    so.verify_reduced_cuts = o.verify_reduced_cuts != 0;
    so.keep_fcg_trajectories = o.keep_fcg_trajectories != 0;
    *out = new fendec_report{
        fendec::solve(inst->inst, static_cast<fendec::Algorithm>(alg), so)};
    return FENDEC_OK;
  });
}

void fendec_report_free(fendec_report* rep) { delete rep; }

fendec_status fendec_report_get_summary(const fendec_report* rep, fendec_report_summary* out) {
  if (!rep || !out) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  const auto& r = rep->report;
  *out = {static_cast<fendec_algorithm>(r.algorithm),
          to_c(r.status),
          r.mips_solved,
          r.fenchel_cuts,
          r.lb,
          r.ub,
          r.gap_pct,
          r.wall_seconds,
          r.iterations,
          r.no_cut_events,
          r.lifted_cuts,
          r.exact_fallbacks};
  return FENDEC_OK;
}

const char* fendec_report_message(const fendec_report* rep) {
  return rep ? rep->report.message.c_str() : "";
}

size_t fendec_report_first_stage(const fendec_report* rep, double* buf, size_t cap) {
  return rep ? copy_out(rep->report.x, buf, cap) : 0;
}

size_t fendec_report_scenario_cuts(const fendec_report* rep, size_t* buf, size_t cap) {
  if (!rep) return 0;
  const std::vector<size_t> v(rep->report.scenario_cuts.begin(), rep->report.scenario_cuts.end());
  return copy_out(v, buf, cap);
}

size_t fendec_report_fcg_trace_count(const fendec_report* rep) {
  return rep ? rep->report.fcg_traces.size() : 0;
}

size_t fendec_report_fcg_trace(const fendec_report* rep, size_t index, size_t* scenario,
                               int* converged, double* l, double* u, size_t cap) {
  if (!rep || index >= rep->report.fcg_traces.size()) return 0;
  const auto& t = rep->report.fcg_traces[index];
  if (scenario) *scenario = t.scenario;
  if (converged) *converged = t.converged ? 1 : 0;
  for (size_t i = 0; i < std::min(cap, t.bounds.size()); ++i) {
    if (l) l[i] = t.bounds[i].l;
    if (u) u[i] = t.bounds[i].u;
  }
  return t.bounds.size();
}

fendec_status fendec_isg_run(size_t m, size_t n, const double* W, const double* tau,
                             const double* u, const double* yhat, int lookahead,
                             fendec_isg_trace** out) {
  if (!out || !W || !tau || !u || !yhat) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (m == 0 || n == 0) return fail(FENDEC_ERR_INVALID_ARGUMENT, "empty system");
  return guarded([&] {
    fendec::IsgInput in;
    in.W = fendec::Matrix(m, n);
    for (size_t k = 0; k < m; ++k)
      for (size_t i = 0; i < n; ++i) in.W(k, i) = W[k * n + i];
    in.tau.assign(tau, tau + m);
    in.u.assign(u, u + n);
    in.yhat.assign(yhat, yhat + n);
    fendec::IsgOptions opt;
    opt.integer_point_check = lookahead != 0;
    *out = new fendec_isg_trace{fendec::run_isg(in, opt)};
    return FENDEC_OK;
  });
}

void fendec_isg_trace_free(fendec_isg_trace* trace) { delete trace; }

size_t fendec_isg_trace_ybar(const fendec_isg_trace* trace, double* buf, size_t cap) {
  return trace ? copy_out(trace->result.ybar, buf, cap) : 0;
}

size_t fendec_isg_trace_step_count(const fendec_isg_trace* trace) {
  return trace ? trace->result.trace.size() : 0;
}

fendec_status fendec_isg_trace_step(const fendec_isg_trace* trace, size_t index,
                                    fendec_isg_step* out) {
  if (!trace || !out) return fail(FENDEC_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= trace->result.trace.size())
    return fail(FENDEC_ERR_INVALID_ARGUMENT, "step index out of range");
  const auto& s = trace->result.trace[index];
  *out = {s.i, s.j, s.k, s.d, static_cast<fendec_isg_action>(s.action)};
  return FENDEC_OK;
}

size_t fendec_isg_trace_step_ybar(const fendec_isg_trace* trace, size_t index, double* buf,
                                  size_t cap) {
  if (!trace || index >= trace->result.trace.size()) return 0;
  return copy_out(trace->result.trace[index].ybar, buf, cap);
}

}  // extern "C"
