#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <atomic>
#include <thread>

#include "CLI11.hpp"
#include "girthwright/engine.hpp"
#include "girthwright/generator.hpp"
#include "girthwright/json_io.hpp"
#include "girthwright/oracle.hpp"

using namespace girthwright;

namespace {

constexpr int kOk = 0;
constexpr int kCertificate = 1;
constexpr int kBadInput = 2;
constexpr int kInternal = 3;

uint64_t default_seed() {
  if (const char* env = std::getenv("GIRTHWRIGHT_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

void write_dot(const io::Instance& inst, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << io::to_dot(inst);
}

int cmd_colour(const std::string& file, bool strict, const std::string& dot) {
  io::Instance inst = io::load_instance_file(file);
  write_dot(inst, dot);
  if (!inst.lists) {
    std::cerr << "colour: instance has no lists\n";
    return kBadInput;
  }
  engine::Options opt;
  opt.strict = strict;
  Colouring phi = engine::colour(inst.g, *inst.lists, opt);
  std::cout << io::colouring_json(phi);
  return kOk;
}

int cmd_extend(const std::string& file, bool strict, const std::string& dot) {
  io::Instance inst = io::load_instance_file(file);
  write_dot(inst, dot);
  if (!inst.lists) {
    std::cerr << "extend: instance has no lists\n";
    return kBadInput;
  }
  if (!inst.phi) {
    std::cerr << "extend: instance has no phi\n";
    return kBadInput;
  }
  Canvas k = io::to_canvas(inst);
  engine::Options opt;
  opt.strict = strict;
  engine::ExtendResult r = engine::extend(k, *inst.phi, opt);
  if (r.colouring) {
    std::cout << io::colouring_json(*r.colouring);
    return kOk;
  }
  std::cout << io::certificate_json(*r.exception);
  return kCertificate;
}

int cmd_classify(const std::string& file, const std::string& dot) {
  io::Instance inst = io::load_instance_file(file);
  write_dot(inst, dot);
  Canvas k = io::to_canvas(inst);
  GirthProfile prof = girth_profile(k.g);
  auto violations = validate_canvas(k, prof);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "canvas violation: " << v.what << "\n";
    return kBadInput;
  }
  auto cert = classify_exception(k, prof);
  if (cert) {
    std::cout << io::certificate_json(*cert);
    return kCertificate;
  }
  std::cout << "{\n  \"status\": \"unexceptional\"\n}\n";
  return kOk;
}

int cmd_girths(const std::string& file, const std::string& dot) {
  io::Instance inst = io::load_instance_file(file);
  write_dot(inst, dot);
  std::cout << io::girth_profile_json(girth_profile(inst.g));
  return kOk;
}

int cmd_gen(int n, const std::string& kind, uint64_t seed, const std::string& out_prefix) {
  auto emit = [&](const io::Instance& inst, const std::string& name) {
    if (out_prefix.empty()) {
      std::cout << io::store_instance(inst);
    } else {
      io::store_instance_file(inst, out_prefix + name + ".json");
      std::cout << out_prefix + name + ".json\n";
    }
  };
  if (kind == "planar") {
    auto all = gen::all_connected_planar(n);
    int i = 0;
    for (const PlaneGraph& g : all) {
      io::Instance inst;
      inst.g = g;
      emit(inst, "planar_n" + std::to_string(n) + "_" + std::to_string(i++));
    }
    std::cerr << all.size() << " graphs\n";
    return kOk;
  }
  if (kind == "wheel" || kind == "broken-wheel") {
    auto made = kind == "wheel" ? gen::make_wheel(n) : gen::make_broken_wheel(n);
    io::Instance inst;
    inst.g = made.graph;
    inst.s.vertices = made.principal;
    emit(inst, kind + "_" + std::to_string(n));
    return kOk;
  }
  if (kind == "canvas") {
    Canvas k = gen::random_canvas(n, seed);
    io::Instance inst = io::from_canvas(k);
    // attach the first proper list colouring of G[V(S)] so the file is
    // ready for `extend`
    auto phis = oracle::proper_colourings_of(k.g, k.l, k.s.vertices);
    if (!phis.empty()) {
      Colouring phi(k.g.n());
      for (size_t i = 0; i < k.s.vertices.size(); ++i) phi.set(k.s.vertices[i], phis[0][i]);
      inst.phi = phi;
    }
    emit(inst, "canvas_n" + std::to_string(n) + "_s" + std::to_string(seed));
    return kOk;
  }
  std::cerr << "gen: unknown kind \"" << kind << "\" (planar|wheel|broken-wheel|canvas)\n";
  return kBadInput;
}

int cmd_oracle_check(const std::string& file) {
  io::Instance inst = io::load_instance_file(file);
  Canvas k = io::to_canvas(inst);
  auto blocked = oracle::blocked_colourings_of_S(k);
  std::cout << "{\n  \"blocked\": [";
  for (size_t i = 0; i < blocked.size(); ++i) {
    std::cout << (i ? ", [" : "[");
    for (size_t j = 0; j < blocked[i].size(); ++j) std::cout << (j ? ", " : "") << blocked[i][j];
    std::cout << "]";
  }
  std::cout << "]\n}\n";
  return kOk;
}

int cmd_stress(int n_max, int seeds, int universe, bool strict, int workers) {
  engine::Options opt;
  opt.strict = strict;
  struct Item {
    PlaneGraph g;
    uint64_t seed;
  };
  std::vector<Item> items;
  for (int n = 1; n <= n_max; ++n)
    for (const PlaneGraph& g : gen::all_connected_planar(n))
      for (int s = 0; s < seeds; ++s) items.push_back({g, default_seed() + s});
  std::mutex mu;
  long long done = 0, failures = 0, fallbacks = 0;
  std::atomic<size_t> next{0};
  auto work = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      const Item& it = items[i];
      GirthProfile prof = girth_profile(it.g);
      std::mt19937_64 rng(it.seed * 1000003ULL + i);
      ListAssignment l(it.g.n());
      for (VertexId v = 0; v < it.g.n(); ++v) {
        int need = list_threshold(girth_class(prof, v));
        std::vector<Colour> pool(universe);
        for (int c = 0; c < universe; ++c) pool[c] = c;
        for (int x = 0; x < need; ++x) {
          int y = x + static_cast<int>(rng() % (pool.size() - x));
          std::swap(pool[x], pool[y]);
          l[v].insert(pool[x]);
        }
      }
      engine::Trace trace;
      bool ok = true;
      try {
        Colouring phi = engine::colour(it.g, l, opt, &trace);
        ok = colouring_proper(it.g, phi) && colouring_respects(l, phi);
      } catch (const Error&) {
        ok = false;
      }
      std::lock_guard<std::mutex> lock(mu);
      done++;
      if (!ok) failures++;
      fallbacks += trace.fallback_count;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::max(1, workers); ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  std::cout << "{\n  \"instances\": " << done << ",\n  \"failures\": " << failures
            << ",\n  \"fallbacks\": " << fallbacks << "\n}\n";
  return failures == 0 ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local girth list colouring toolkit"};
  app.require_subcommand(1);

  std::string file, dot, kind = "planar", out_prefix;
  bool strict = false;
  int n = 5, seeds = 50, universe = 6, workers = 4;
  uint64_t seed = default_seed();

  auto* colour = app.add_subcommand("colour", "colour a plane graph from its lists");
  colour->add_option("file", file)->required();
  colour->add_flag("--strict", strict, "forbid the diagnostic fallback");
  colour->add_option("--dot", dot, "write a DOT rendering of the instance");

  auto* extend = app.add_subcommand("extend", "extend phi on S to the whole graph");
  extend->add_option("file", file)->required();
  extend->add_flag("--strict", strict);
  extend->add_option("--dot", dot);

  auto* classify = app.add_subcommand("classify", "classify the exceptional canvas type");
  classify->add_option("file", file)->required();
  classify->add_option("--dot", dot);

  auto* girths = app.add_subcommand("girths", "per-vertex girth profile");
  girths->add_option("file", file)->required();
  girths->add_option("--dot", dot);

  auto* gen_cmd = app.add_subcommand("gen", "generate graphs, wheels and canvases");
  gen_cmd->add_option("-n,--n", n, "size parameter");
  gen_cmd->add_option("-k,--kind", kind, "planar|wheel|broken-wheel|canvas");
  gen_cmd->add_option("-s,--seed", seed, "seed (canvas)");
  gen_cmd->add_option("-o,--out", out_prefix, "output file prefix");

  auto* stress = app.add_subcommand("stress", "exhaustive small-graph stress run");
  stress->add_option("--n-max", n, "largest vertex count")->default_val(5);
  stress->add_option("--seeds", seeds, "assignments per graph")->default_val(50);
  stress->add_option("--universe", universe, "colour universe size")->default_val(6);
  stress->add_option("--workers", workers, "worker threads")->default_val(4);
  stress->add_flag("--strict", strict);

  auto* oracle_check = app.add_subcommand("oracle-check", "blocked colourings of S");
  oracle_check->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*colour) return cmd_colour(file, strict, dot);
    if (*extend) return cmd_extend(file, strict, dot);
    if (*classify) return cmd_classify(file, dot);
    if (*girths) return cmd_girths(file, dot);
    if (*gen_cmd) return cmd_gen(n, kind, seed, out_prefix);
    if (*stress) return cmd_stress(n, seeds, universe, strict, workers);
    if (*oracle_check) return cmd_oracle_check(file);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind) {
      case ErrorKind::EngineIncomplete:
      case ErrorKind::NoReductionApplies:
        return kInternal;
      default:
        return kBadInput;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kInternal;
  }
  return kBadInput;
}
