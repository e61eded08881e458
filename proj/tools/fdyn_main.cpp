// fdyn: command-line front end.
//
// Exit codes: 0 success, 1 verify failure or numerical error, 2 usage error,
// 3 config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "fdyn/atlas.hpp"
#include "fdyn/boettcher.hpp"
#include "fdyn/cycles.hpp"
#include "fdyn/escape.hpp"
#include "fdyn/topology.hpp"
#include "verify.hpp"

namespace {

using namespace fdyn;
using fdyn::cli::Config;
using fdyn::cli::ConfigError;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags that may override config-file values.
struct Overrides {
  std::string config_path;
  std::string viewport;
  std::string resolution;
  std::optional<int> max_iter;
  std::optional<int> period_max;
  std::optional<double> bailout_constant;
  std::string out;
};

void add_override_flags(CLI::App* sub, Overrides& o, bool with_period) {
  sub->add_option("--config", o.config_path, "key = value config file");
  sub->add_option("--viewport", o.viewport, "XMIN,XMAX,YMIN,YMAX");
  sub->add_option("--resolution", o.resolution, "NX,NY");
  sub->add_option("--max-iter", o.max_iter);
  if (with_period) sub->add_option("--period-max", o.period_max);
  sub->add_option("--bailout-constant", o.bailout_constant);
  sub->add_option("--out", o.out, "output PPM path");
}

// File values first, then flags on top. Bad flag values are usage errors.
Config resolve(const Overrides& o) {
  Config c = o.config_path.empty() ? Config{} : cli::load_config(o.config_path);
  auto flag = [&](const std::string& key, const std::string& value) {
    try {
      cli::set_key(c, key, value);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--") + e.what());
    }
  };
  if (!o.viewport.empty()) flag("viewport", o.viewport);
  if (!o.resolution.empty()) flag("resolution", o.resolution);
  if (o.max_iter) flag("max_iter", std::to_string(*o.max_iter));
  if (o.period_max) flag("period_max", std::to_string(*o.period_max));
  if (o.bailout_constant) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *o.bailout_constant);
    flag("bailout_constant", buf);
  }
  if (!o.out.empty()) flag("output_path", o.out);
  return c;
}

GridSpec grid_of(const Config& c, std::array<double, 4> default_view, int default_n) {
  const auto v = c.viewport.value_or(default_view);
  const auto [nx, ny] = c.resolution.value_or(std::make_pair(default_n, default_n));
  return GridSpec::from_bounds(v[0], v[1], v[2], v[3], nx, ny);
}

Parameter parse_t(const std::string& s) {
  try {
    return Parameter(cli::parse_complex(s));
  } catch (const ConfigError& e) {
    throw UsageError(std::string("--t: ") + e.what());
  } catch (const DomainError& e) {
    throw UsageError(std::string("--t: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  if (!out) throw Error("cannot write '" + path + "'");
}

void print_point_line(Complex z, int n, double m) {
  std::printf("%.17g %.17g %d %.17g\n", z.real(), z.imag(), n, m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics of f_t(z) = -(t/4)(z^2 - 2)^2/(z^2 - 1)"};
  app.require_subcommand(1);
  app.fallthrough();
  int workers = 0;
  app.add_option("--workers", workers, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);

  Overrides param_o;
  auto* render_param = app.add_subcommand("render-param", "render the parameter plane to PPM");
  add_override_flags(render_param, param_o, true);

  Overrides julia_o;
  std::string julia_t;
  auto* render_julia_cmd = app.add_subcommand("render-julia", "render the dynamical plane of f_t to PPM");
  render_julia_cmd->add_option("--t", julia_t, "RE,IM")->required();
  add_override_flags(render_julia_cmd, julia_o, false);

  std::string classify_t;
  int classify_iter = kDefaultMaxIter;
  double classify_c = kDefaultBailoutConstant;
  auto* classify = app.add_subcommand("classify", "classify a parameter by its critical orbit");
  classify->add_option("--t", classify_t, "RE,IM")->required();
  classify->add_option("--max-iter", classify_iter)->check(CLI::PositiveNumber);
  classify->add_option("--bailout-constant", classify_c);

  int centers_n = 0;
  auto* centers = app.add_subcommand("centers", "centers of exact period n");
  centers->add_option("--n", centers_n)->required()->check(CLI::Range(1, 4));

  int mis_j = 0, mis_k = 0;
  auto* misiurewicz = app.add_subcommand("misiurewicz", "parameters with Q_j(t) = Q_k(t) on a repelling cycle");
  misiurewicz->add_option("--j", mis_j)->required()->check(CLI::Range(0, 3));
  misiurewicz->add_option("--k", mis_k)->required()->check(CLI::Range(1, 4));

  int census_p = 0, census_l = 0;
  Overrides census_o;
  auto* census_cmd = app.add_subcommand("census", "count components on a grid");
  census_cmd->add_option("--period-max", census_p)->required()->check(CLI::Range(1, 31));
  census_cmd->add_option("--level-max", census_l)->required()->check(CLI::Range(0, 30));
  census_cmd->add_option("--config", census_o.config_path, "key = value config file");
  census_cmd->add_option("--viewport", census_o.viewport, "XMIN,XMAX,YMIN,YMAX");
  census_cmd->add_option("--resolution", census_o.resolution, "NX,NY");
  census_cmd->add_option("--max-iter", census_o.max_iter);

  std::string probe_t;
  int probe_res = 2048;
  int probe_iter = kProbeMaxIter;
  auto* probe = app.add_subcommand("probe", "pixel evidence for the shape of the pole basin");
  probe->add_option("--t", probe_t, "RE,IM")->required();
  probe->add_option("--res", probe_res)->check(CLI::Range(8, 16384));
  probe->add_option("--max-iter", probe_iter)->check(CLI::PositiveNumber);

  std::string kernel_t;
  int kernel_n = 3;
  auto* kernel = app.add_subcommand("kernel-check", "Xi_n(t) against sqrt(-4 E_0(t))");
  kernel->add_option("--t", kernel_t, "RE,IM")->required();
  kernel->add_option("--n-max", kernel_n)->required()->check(CLI::Range(1, 20));

  auto* verify = app.add_subcommand("verify", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*render_param) {
      const Config c = resolve(param_o);
      const GridSpec g = grid_of(c, {-3.0, 3.0, -2.0, 2.0}, 512);
      const ImageBuffer img = render_parameter(g, c.max_iter.value_or(kRenderMaxIter),
                                               c.period_max.value_or(kDefaultPeriodMax), workers,
                                               c.bailout_constant.value_or(kDefaultBailoutConstant));
      const std::string path = c.output_path.value_or("param.ppm");
      write_file(path, encode_ppm(img));
      std::printf("%s %d %d\n", path.c_str(), img.nx, img.ny);
    } else if (*render_julia_cmd) {
      const Parameter t = parse_t(julia_t);
      const Config c = resolve(julia_o);
      const GridSpec g = grid_of(c, {-3.0, 3.0, -3.0, 3.0}, 512);
      const ImageBuffer img = render_julia(t, g, c.max_iter.value_or(kRenderMaxIter), workers,
                                           c.bailout_constant.value_or(kDefaultBailoutConstant));
      const std::string path = c.output_path.value_or("julia.ppm");
      write_file(path, encode_ppm(img));
      std::printf("%s %d %d\n", path.c_str(), img.nx, img.ny);
    } else if (*classify) {
      const Parameter t = parse_t(classify_t);
      if (classify_c < kMinBailoutConstant) throw UsageError("--bailout-constant must be >= 10");
      std::printf("%s\n", to_record(t.value(), classify_parameter(t, classify_iter, classify_c)).c_str());
    } else if (*centers) {
      for (const Complex& tv : find_centers(centers_n)) {
        // multiplier of the orbit 0 -> t -> ... -> 0 through the critical point
        const Parameter t(tv);
        std::vector<Complex> pts{Complex{0.0, 0.0}};
        for (int k = 1; k < centers_n; ++k) pts.push_back(eval_map(t, ExtendedComplex(pts.back())).value());
        print_point_line(tv, centers_n, std::abs(cycle_multiplier(t, pts)));
      }
    } else if (*misiurewicz) {
      if (mis_j >= mis_k) throw UsageError("--j must be smaller than --k");
      for (const auto& m : find_misiurewicz(mis_j, mis_k)) {
        print_point_line(m.t, m.landing_period, std::abs(m.multiplier));
      }
    } else if (*census_cmd) {
      const Config c = resolve(census_o);
      const GridSpec g = grid_of(c, {-3.0, 3.0, -3.0, 3.0}, 2048);
      const CensusResult r = census(g, census_p, census_l, c.max_iter.value_or(2000), workers);
      for (const CensusRow& row : r.rows) {
        std::printf("%s %d %d %lld\n", to_string(row.kind).c_str(), row.index, row.components_found, row.bound);
      }
    } else if (*probe) {
      const Parameter t = parse_t(probe_t);
      const ProbeReport rep = sierpinski_probe(t, GridSpec::centered_square(3.0, probe_res), probe_iter, workers);
      std::printf("%s\n", to_record(rep).c_str());
    } else if (*kernel) {
      const Parameter t = parse_t(kernel_t);
      const Complex target = sqrt_minus_4e0(t);
      std::printf("0 %.17g %.17g 0\n", target.real(), target.imag());
      for (int n = 1; n <= kernel_n; ++n) {
        const Complex x = xi_n(t, n);
        std::printf("%d %.17g %.17g %.17g\n", n, x.real(), x.imag(), kernel_gap(t, n));
      }
    } else if (*verify) {
      return cli::run_verify(std::cout, workers) ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const WrongStratum& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
