// Command-line front end: table printing, law checking, key establishment
// (in-process and over TCP), attack pipelines, coset-problem experiments and
// micro-benchmarks. Exit codes: 0 success, 1 mismatch or counterexample,
// 2 usage/parse error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ldkep/attacks.hpp"
#include "ldkep/ld_context.hpp"
#include "ldkep/protocol.hpp"
#include "ldkep/wire.hpp"

using namespace ldkep;

namespace {

struct CommonOpts {
  std::string ctx = "laver3";
  std::uint64_t seed = 1;
  unsigned m = 1, n = 1;
  unsigned leaf_min = 0, leaf_max = 0;
  std::size_t word_len = 0;
  unsigned trials = 200;
  std::string hash = "sha256";
  std::string out;
  std::string config;
};

std::string resolve_preset(const std::string& ctx) {
  static const std::map<std::string, std::string> kPresets = {
      {"laver1", "platform=laver n=1"},
      {"laver2", "platform=laver n=2"},
      {"laver3", "platform=laver n=3"},
      {"s3-conj", "platform=group kind=symmetric degree=3"},
      {"s4-conj", "platform=group kind=symmetric degree=4"},
      {"s5-conj", "platform=group kind=symmetric degree=5"},
      {"dihedral8", "platform=group kind=dihedral order=8 a=r2"},
      {"dihedral8-2ops", "platform=group kind=dihedral order=8 a=r2,e"},
      {"quaternion8", "platform=group kind=quaternion a=m1"},
      {"shifted", "platform=braid mode=shifted p=1"},
      {"braid-gsc",
       "platform=braid mode=gsc p=7 q1=3 q2=4 alpha1=\"1 2\" alpha2=\"3\" beta1=\"5\" "
       "beta2=\"5 6\""},
  };
  auto it = kPresets.find(ctx);
  return it == kPresets.end() ? ctx : it->second;
}

// key=value lines; '#' starts a comment. Flags given on the command line win.
void load_config(CommonOpts& opts, const std::set<std::string>& given) {
  if (opts.config.empty()) return;
  std::ifstream in(opts.config);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + opts.config);
  std::string line;
  auto set_if_unset = [&](const std::string& flag, auto& field, const std::string& value) {
    if (given.count(flag)) return;
    std::istringstream iv(value);
    iv >> field;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "ctx" && !given.count("--ctx")) opts.ctx = value;
    else if (key == "seed") set_if_unset("--seed", opts.seed, value);
    else if (key == "m") set_if_unset("--m", opts.m, value);
    else if (key == "n") set_if_unset("--n", opts.n, value);
    else if (key == "leaf-min") set_if_unset("--leaf-min", opts.leaf_min, value);
    else if (key == "leaf-max") set_if_unset("--leaf-max", opts.leaf_max, value);
    else if (key == "word-len") set_if_unset("--word-len", opts.word_len, value);
    else if (key == "trials") set_if_unset("--trials", opts.trials, value);
    else if (key == "hash" && !given.count("--hash")) opts.hash = value;
  }
}

struct TeeOut {
  std::ostringstream copy;
  template <typename T>
  TeeOut& operator<<(const T& v) {
    std::cout << v;
    copy << v;
    return *this;
  }
  void flush_to(const std::string& path) {
    if (path.empty()) return;
    std::ofstream f(path);
    f << copy.str();
  }
};

PublicParams make_params(const CommonOpts& opts) {
  ProtocolOptions po;
  po.leaf_min = opts.leaf_min;
  po.leaf_max = opts.leaf_max;
  po.word_length = opts.word_len;
  po.hash_id = opts.hash;
  Rng r(opts.seed);
  std::uint64_t setup = r.next();
  return PublicParams::make(resolve_preset(opts.ctx), opts.m, opts.n, setup, po);
}

// seeds derived from the master seed; identical on both ends of a session
void derive_seeds(std::uint64_t master, std::uint64_t& alice, std::uint64_t& bob) {
  Rng r(master);
  r.next();  // setup slot (consumed by make_params)
  alice = r.next();
  bob = r.next();
}

int cmd_laver(unsigned level, bool check, const std::string& format, const std::string& out) {
  TeeOut tee;
  LaverTable table(level);
  if (format == "csv") {
    for (std::uint32_t x = 1; x <= table.size(); ++x) {
      for (std::uint32_t y = 1; y <= table.size(); ++y)
        tee << table.apply(x, y) << (y == table.size() ? "" : ",");
      tee << "\n";
    }
  } else {
    tee << table.to_text();
  }
  int rc = 0;
  if (check) {
    std::uint32_t x, y, z;
    if (table.check_left_distributive_exhaustive(&x, &y, &z)) {
      tee << "law: pass (exhaustive over " << table.size() << "^3 triples)\n";
    } else {
      tee << "law: FAIL at (" << x << "," << y << "," << z << ")\n";
      rc = 1;
    }
  }
  tee.flush_to(out);
  return rc;
}

int cmd_laws(const CommonOpts& opts) {
  TeeOut tee;
  LDContext ctx = LDContext::from_descriptor(resolve_preset(opts.ctx));
  if (opts.word_len && ctx.carrier() == CarrierKind::Braid) {
    BraidSampler s = ctx.braid_sampler();
    s.length = opts.word_len;
    ctx.set_sampler(s);
  }
  tee << "context: " << ctx.descriptor() << "\n";
  int rc = 0;
  for (auto [i, j] : ctx.declared_law_pairs()) {
    LawReport report = check_left_distributive(ctx, i, j, opts.trials, opts.seed);
    tee << "law " << ctx.op(i).name << " over " << ctx.op(j).name << ": "
        << (report.pass ? "pass" : "FAIL") << " (" << report.checked << " triples"
        << (report.exhaustive ? ", exhaustive" : "") << ")\n";
    if (!report.pass) {
      rc = 1;
      const auto& c = *report.counterexample;
      tee << "  counterexample: x=" << ctx.to_text(c[0]) << " y=" << ctx.to_text(c[1])
          << " z=" << ctx.to_text(c[2]) << "\n";
    }
  }
  tee.flush_to(opts.out);
  return rc;
}

int cmd_kep_run(const CommonOpts& opts) {
  TeeOut tee;
  PublicParams params = make_params(opts);
  std::uint64_t seed_a, seed_b;
  derive_seeds(opts.seed, seed_a, seed_b);
  try {
    LocalRun run = run_local(params, seed_a, seed_b);
    tee << wire::hello_line(params, true) << "\n";
    tee << wire::serialize_frame(wire::pub_lines_alice(params, run.transcript.msg_a));
    tee << wire::serialize_frame(wire::pub_lines_bob(params, run.transcript.msg_b));
    tee << wire::confirm_line(*run.transcript.confirm_a) << "\n";
    tee << wire::confirm_line(*run.transcript.confirm_b) << "\n";
    tee << "key established: " << *run.transcript.confirm_a << "\n";
    tee.flush_to(opts.out);
    return 0;
  } catch (const key_mismatch_error& e) {
    tee << "key mismatch: " << e.what() << "\n";
    tee.flush_to(opts.out);
    return 1;
  }
}

int run_session_command(const CommonOpts& opts, const std::string& endpoint, bool serve,
                        const std::string& role, unsigned timeout) {
  TeeOut tee;
  PublicParams params = make_params(opts);
  std::uint64_t seed_a, seed_b;
  derive_seeds(opts.seed, seed_a, seed_b);
  bool as_alice = role == "alice";
  std::uint64_t key_seed = as_alice ? seed_a : seed_b;

  std::string host = "127.0.0.1";
  std::uint16_t port = 4455;
  if (!endpoint.empty()) {
    std::size_t colon = endpoint.rfind(':');
    if (colon == std::string::npos) throw CLI::ValidationError("endpoint", "need host:port");
    host = endpoint.substr(0, colon);
    port = static_cast<std::uint16_t>(std::stoul(endpoint.substr(colon + 1)));
  }
  try {
    wire::SessionOutcome outcome;
    if (serve) {
      wire::Listener listener(host, port);
      tee << "listening on " << host << ":" << listener.port() << " as " << role << "\n";
      outcome = wire::serve_session(listener, params, as_alice, key_seed, timeout);
    } else {
      outcome = wire::connect_session(host, port, params, as_alice, key_seed, timeout);
    }
    tee << "local  keyhash: " << outcome.local_hash << "\n";
    tee << "remote keyhash: " << outcome.remote_hash << "\n";
    tee << (outcome.hash_match ? "session ok: keys agree\n" : "session FAILED: key mismatch\n");
    tee.flush_to(opts.out);
    return outcome.hash_match ? 0 : 1;
  } catch (const wire::peer_mismatch_error& e) {
    tee << "session rejected: " << e.what() << "\n";
    tee.flush_to(opts.out);
    return 1;
  } catch (const wire::wire_error& e) {
    tee << "wire error: " << e.what() << "\n";
    tee.flush_to(opts.out);
    return 2;
  }
}

int cmd_attack(const CommonOpts& opts, const std::string& pipeline_arg) {
  TeeOut tee;
  PublicParams params = make_params(opts);
  if (!params.ctx.carrier_size()) {
    tee << "refused: the carrier is infinite; brute-force pipelines run on finite platforms "
           "only (the braid-side problems are exactly what the protocol's security rests on)\n";
    tee.flush_to(opts.out);
    return 2;
  }
  Pipeline pipeline;
  if (pipeline_arg == "A") pipeline = Pipeline::A;
  else if (pipeline_arg == "B") pipeline = Pipeline::B;
  else if (pipeline_arg == "C") pipeline = Pipeline::C;
  else if (pipeline_arg == "D") pipeline = Pipeline::D;
  else throw CLI::ValidationError("--pipeline", "must be A, B, C or D");

  std::uint64_t seed_a, seed_b;
  derive_seeds(opts.seed, seed_a, seed_b);
  auto start = std::chrono::steady_clock::now();
  LocalRun honest = run_local(params, seed_a, seed_b);
  PipelineResult result = run_pipeline(pipeline, params, honest.transcript);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  bool match = result.key.canonical == honest.key_a.canonical;
  tee << "attack pipeline " << pipeline_name(pipeline) << " on " << params.ctx.descriptor()
      << "\n";
  tee << "  oracle candidates tested: " << result.tested << "\n";
  tee << "  " << result.notes << "\n";
  tee << "  recovered keyhash: " << confirm_digest(result.key, params) << "\n";
  tee << "  honest    keyhash: " << *honest.transcript.confirm_a << "\n";
  tee << "  wall time: " << ms << " ms\n";
  tee << "  verdict: " << (match ? "MATCH" : "MISMATCH") << "\n";
  tee.flush_to(opts.out);
  return match ? 0 : 1;
}

int cmd_sccp(const CommonOpts& opts, bool plant, bool transform, unsigned count) {
  TeeOut tee;
  Rng rng(opts.seed);
  int rc = 0;
  if (plant) {
    PermGroup group = PermGroup::symmetric(5);
    SubgroupSpec h{SubgroupSpec::Kind::Young, {3, 2}};
    SubgroupSpec k{SubgroupSpec::Kind::Whole, {}};
    unsigned solved = 0;
    for (unsigned t = 0; t < count; ++t) {
      SCCPInstance inst = plant_sccp(group, h, k, rng);
      auto sol = sccp_brute(inst);
      if (sol && (sol->c * inst.x * sol->c.inverse() == sol->h * inst.y)) ++solved;
    }
    tee << "planted coset instances in S_5 (H = S_3 x S_2, K = S_5): solved " << solved << "/"
        << count << "\n";
    if (solved != count) rc = 1;
  }
  if (transform) {
    ParabolicParams params{7, 3, 4, 0};
    unsigned ok = 0;
    for (unsigned t = 0; t < count; ++t) {
      PlantedDecomposition planted = plant_decomposition(params, rng, t % 5 == 4);
      TransformCheck check = verify_decomposition_transform(planted, params);
      if (check.identity_holds && check.factors_in_windows) ++ok;
    }
    tee << "decomposition -> coset transform (p=7, q1=3, q2=4): verified " << ok << "/" << count
        << "\n";
    if (ok != count) rc = 1;
  }
  if (!plant && !transform)
    throw CLI::ValidationError("sccp", "pass --plant and/or --transform");
  tee.flush_to(opts.out);
  return rc;
}

int cmd_bench(const CommonOpts& opts) {
  TeeOut tee;
  tee << "task,parameter,ms\n";
  auto time_ms = [](auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  Rng rng(opts.seed);
  for (std::size_t len : {64u, 256u, 1024u}) {
    BraidWord w = random_braid_word(rng, len, 15);
    double ms = time_ms([&] { normal_form(w, 16); });
    tee << "normal_form,len=" << len << "," << ms << "\n";
  }
  for (const char* preset : {"laver3", "s5-conj", "braid-gsc"}) {
    CommonOpts o = opts;
    o.ctx = preset;
    PublicParams params = make_params(o);
    std::uint64_t sa, sb;
    derive_seeds(o.seed, sa, sb);
    double ms = time_ms([&] { run_local(params, sa, sb); });
    tee << "handshake," << preset << "," << ms << "\n";
  }
  {
    CommonOpts o = opts;
    o.ctx = "laver3";
    PublicParams params = make_params(o);
    std::uint64_t sa, sb;
    derive_seeds(o.seed, sa, sb);
    LocalRun honest = run_local(params, sa, sb);
    for (Pipeline p : {Pipeline::A, Pipeline::B, Pipeline::C, Pipeline::D}) {
      double ms = time_ms([&] { run_pipeline(p, params, honest.transcript); });
      tee << "pipeline_" << pipeline_name(p) << ",laver3," << ms << "\n";
    }
  }
  tee.flush_to(opts.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Left-distributive key establishment toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  unsigned laver_level = 3;
  bool laver_check = false;
  std::string laver_format = "text";
  std::string pipeline = "C";
  std::string listen_ep, connect_ep, role;
  unsigned timeout = 30;
  bool sccp_plant = false, sccp_transform = false;
  unsigned sccp_count = 50;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--ctx", opts.ctx, "context descriptor or preset name");
    cmd->add_option("--seed", opts.seed, "master seed");
    cmd->add_option("--m", opts.m, "size of Alice's public basis");
    cmd->add_option("--n", opts.n, "size of Bob's public basis");
    cmd->add_option("--leaf-min", opts.leaf_min, "minimum secret tree leaves");
    cmd->add_option("--leaf-max", opts.leaf_max, "maximum secret tree leaves");
    cmd->add_option("--word-len", opts.word_len, "braid sampler word length");
    cmd->add_option("--trials", opts.trials, "sampled trials for law checks");
    cmd->add_option("--hash", opts.hash, "key confirmation hash id");
    cmd->add_option("--out", opts.out, "also write the report to this file");
    cmd->add_option("--config", opts.config, "key=value config file (flags win)");
  };

  CLI::App* laver = app.add_subcommand("laver", "print a Laver table");
  laver->add_option("level", laver_level, "table level (1..5)")->required();
  laver->add_flag("--check", laver_check, "run the exhaustive distributivity scan");
  laver->add_option("--format", laver_format, "text or csv");
  laver->add_option("--out", opts.out, "also write to this file");

  CLI::App* laws = app.add_subcommand("laws", "check the declared distributive laws");
  add_common(laws);

  CLI::App* run = app.add_subcommand("kep-run", "in-process handshake, transcript on stdout");
  add_common(run);

  CLI::App* serve = app.add_subcommand("kep-serve", "accept one session over TCP");
  add_common(serve);
  serve->add_option("--listen", listen_ep, "host:port to bind (default 127.0.0.1:4455)");
  serve->add_option("--role", role, "alice or bob (default bob)");
  serve->add_option("--timeout", timeout, "seconds");

  CLI::App* connect = app.add_subcommand("kep-connect", "connect and run one session");
  add_common(connect);
  connect->add_option("--connect", connect_ep, "host:port to reach (default 127.0.0.1:4455)");
  connect->add_option("--role", role, "alice or bob (default alice)");
  connect->add_option("--timeout", timeout, "seconds");

  CLI::App* attack = app.add_subcommand("attack", "run a key-recovery pipeline on a transcript");
  add_common(attack);
  attack->add_option("--pipeline", pipeline, "A, B, C or D")->required();

  CLI::App* sccp = app.add_subcommand("sccp", "conjugacy coset problem experiments");
  add_common(sccp);
  sccp->add_flag("--plant", sccp_plant, "plant and solve finite instances");
  sccp->add_flag("--transform", sccp_transform, "verify the braid decomposition transform");
  sccp->add_option("--count", sccp_count, "instances per experiment");

  CLI::App* bench = app.add_subcommand("bench", "timing table (CSV)");
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::set<std::string> given;
    for (CLI::App* sub : app.get_subcommands())
      for (const CLI::Option* o : sub->get_options())
        if (o->count() > 0) given.insert(o->get_name());
    load_config(opts, given);

    if (laver->parsed()) return cmd_laver(laver_level, laver_check, laver_format, opts.out);
    if (laws->parsed()) return cmd_laws(opts);
    if (run->parsed()) return cmd_kep_run(opts);
    if (serve->parsed())
      return run_session_command(opts, listen_ep, true, role.empty() ? "bob" : role, timeout);
    if (connect->parsed())
      return run_session_command(opts, connect_ep, false, role.empty() ? "alice" : role, timeout);
    if (attack->parsed()) return cmd_attack(opts, pipeline);
    if (sccp->parsed()) return cmd_sccp(opts, sccp_plant, sccp_transform, sccp_count);
    if (bench->parsed()) return cmd_bench(opts);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
