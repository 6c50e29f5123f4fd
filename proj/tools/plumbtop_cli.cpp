// plumbtop command-line front end. Talks to the shared library through
// the C API only.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "plumbtop/plumbtop.h"

namespace {

using Json = nlohmann::ordered_json;

int g_threads = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text << "\n";
  }
}

[[noreturn]] void fail(const char* stage, char* err) {
  std::cerr << "error (" << stage << "): " << (err ? err : "unknown") << "\n";
  plumbtop_string_free(err);
  std::exit(2);
}

struct Handles {
  plumbtop_lattice* lat = nullptr;
  plumbtop_tree* tree = nullptr;
  plumbtop_series* series = nullptr;
  ~Handles() {
    if (lat) plumbtop_lattice_free(lat);
    if (tree) plumbtop_tree_free(tree);
    if (series) plumbtop_series_free(series);
  }
};

plumbtop_lattice* open_lattice(const std::string& kind) {
  plumbtop_lattice* lat = nullptr;
  char* err = nullptr;
  if (plumbtop_lattice_new(kind.c_str(), &lat, &err) != PLUMBTOP_OK) fail("lattice", err);
  return lat;
}

plumbtop_tree* open_tree(const std::string& path) {
  plumbtop_tree* t = nullptr;
  char* err = nullptr;
  std::string body = read_file(path);
  if (plumbtop_tree_parse(body.c_str(), &t, &err) != PLUMBTOP_OK) fail("tree", err);
  return t;
}

plumbtop_series* open_series(plumbtop_lattice* lat, const std::string& spec) {
  std::string body = spec;
  if (spec != "W" && spec.rfind("translate:", 0) != 0) body = read_file(spec);
  plumbtop_series* s = nullptr;
  char* err = nullptr;
  if (plumbtop_series_create(lat, body.c_str(), &s, &err) != PLUMBTOP_OK) fail("series", err);
  return s;
}

// Exit nonzero when a verification report is negative.
int report_exit(const std::string& json, const char* key) {
  Json j = Json::parse(json);
  if (j.contains(key) && j[key].is_boolean() && !j[key].get<bool>()) return 1;
  return 0;
}

std::string take(char* owned) {
  std::string s = owned ? owned : "";
  plumbtop_string_free(owned);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plumbtop: invariant q-series of weakly negative definite plumbed 3-manifolds"};
  app.require_subcommand(1);

  if (const char* envt = std::getenv("PLUMBTOP_THREADS")) g_threads = std::max(1, std::atoi(envt));

  std::string tree_path, lattice_kind = "A1", series_spec = "W", out_path, move_json;
  std::string radius = "60", trunc = "24", side = "vanish_positive", via = "both", window_path;
  int spinc_index = 0, weyl_index = 0, depth = 64;
  bool wnd_only = false;
  std::vector<long> bvals;
  std::string gamma_csv = "0";
  int simple_root = 0;

  // tree subcommands
  auto* tree_cmd = app.add_subcommand("tree", "plumbing tree operations");
  tree_cmd->require_subcommand(1);
  auto* tree_check = tree_cmd->add_subcommand("check", "framing, weak negative definiteness, reducedness");
  tree_check->add_option("--tree", tree_path, "tree JSON file")->required();
  tree_check->add_flag("--wnd", wnd_only, "exit status reflects weak negative definiteness only");
  tree_check->add_option("--depth", depth, "move search depth");
  auto* tree_reduce = tree_cmd->add_subcommand("reduce", "contract branches at reducible vertices");
  tree_reduce->add_option("--tree", tree_path, "tree JSON file")->required();
  tree_reduce->add_option("--out", out_path, "output file");
  tree_reduce->add_option("--depth", depth, "move search depth");
  auto* tree_move = tree_cmd->add_subcommand("move", "apply a Neumann move");
  tree_move->add_option("--tree", tree_path, "tree JSON file")->required();
  tree_move->add_option("--move", move_json, "move JSON, e.g. {\"kind\":\"Aplus\",\"a\":0,\"b\":1}")->required();
  tree_move->add_option("--out", out_path, "output file");

  // spinc
  auto* spinc_cmd = app.add_subcommand("spinc", "generalized Spin^c structures");
  auto* spinc_list = spinc_cmd->add_subcommand("list", "enumerate class representatives");
  spinc_list->add_option("--tree", tree_path, "tree JSON file")->required();
  spinc_list->add_option("--lattice", lattice_kind, "root lattice label (A1, A2, ...)")->required();

  // puzzle
  auto* puzzle_cmd = app.add_subcommand("puzzle", "admissible series");
  puzzle_cmd->require_subcommand(1);
  auto* puzzle_verify = puzzle_cmd->add_subcommand("verify", "check (P1)/(P2) on a window");
  puzzle_verify->add_option("--lattice", lattice_kind)->required();
  puzzle_verify->add_option("--radius", radius, "norm radius of the verification window");
  puzzle_verify->add_option("--series", series_spec, "W, translate:<i>:<coords>, or a JSON file");
  puzzle_verify->add_option("--window", window_path, "verify a coefficient window file instead");
  auto* puzzle_solve = puzzle_cmd->add_subcommand("solve-a1", "propagate the A1 puzzle from one vanishing side");
  puzzle_solve->add_option("--side", side, "vanish_positive | vanish_negative");
  puzzle_solve->add_option("--radius", radius, "norm radius of the solved window");
  auto* puzzle_family = puzzle_cmd->add_subcommand("family", "emit a translate-family member as JSON");
  puzzle_family->add_option("--lattice", lattice_kind)->required();
  puzzle_family->add_option("--gamma", gamma_csv, "shift coordinates, comma separated")->required();
  puzzle_family->add_option("--index", simple_root, "simple root index");
  puzzle_family->add_option("--out", out_path, "output file");

  // y-series
  auto* y_cmd = app.add_subcommand("y-series", "compute the invariant series");
  y_cmd->add_option("--tree", tree_path)->required();
  y_cmd->add_option("--lattice", lattice_kind)->required();
  y_cmd->add_option("--series", series_spec);
  y_cmd->add_option("--spinc", spinc_index, "index into the canonical class enumeration");
  y_cmd->add_option("--trunc", trunc, "exponent range above the minimal-exponent bound");
  y_cmd->add_option("--out", out_path);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "invariance checks");
  verify_cmd->require_subcommand(1);
  auto* verify_move = verify_cmd->add_subcommand("move", "Neumann move invariance");
  verify_move->add_option("--tree", tree_path)->required();
  verify_move->add_option("--lattice", lattice_kind)->required();
  verify_move->add_option("--series", series_spec);
  verify_move->add_option("--move", move_json)->required();
  verify_move->add_option("--spinc", spinc_index);
  verify_move->add_option("--trunc", trunc);
  auto* verify_weyl = verify_cmd->add_subcommand("weyl", "Weyl action invariance");
  verify_weyl->add_option("--tree", tree_path)->required();
  verify_weyl->add_option("--lattice", lattice_kind)->required();
  verify_weyl->add_option("--series", series_spec);
  verify_weyl->add_option("--spinc", spinc_index);
  verify_weyl->add_option("--w", weyl_index, "Weyl element index");
  verify_weyl->add_option("--trunc", trunc);
  auto* verify_twist = verify_cmd->add_subcommand("twist", "independence of the series twist");
  verify_twist->add_option("--tree", tree_path)->required();
  verify_twist->add_option("--lattice", lattice_kind)->required();
  verify_twist->add_option("--series", series_spec);
  verify_twist->add_option("--spinc", spinc_index);
  verify_twist->add_option("--w", weyl_index, "Weyl element index");
  verify_twist->add_option("--trunc", trunc);

  // brieskorn
  auto* brieskorn_cmd = app.add_subcommand("brieskorn", "Brieskorn sphere dual-path computation");
  brieskorn_cmd->add_option("--b", bvals, "the three pairwise coprime parameters")->expected(3)->required();
  brieskorn_cmd->add_option("--lattice", lattice_kind)->required();
  brieskorn_cmd->add_option("--series", series_spec);
  brieskorn_cmd->add_option("--trunc", trunc);
  brieskorn_cmd->add_option("--via", via, "tree | closed-form | both");
  brieskorn_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    char* err = nullptr;
    char* out = nullptr;
    Handles h;

    if (tree_check->parsed()) {
      h.tree = open_tree(tree_path);
      if (plumbtop_tree_check(h.tree, depth, &out, &err) != PLUMBTOP_OK) fail("check", err);
      std::string rep = take(out);
      write_output(rep, "");
      return report_exit(rep, wnd_only ? "weakly_negative_definite" : "weakly_negative_definite");
    }
    if (tree_reduce->parsed()) {
      h.tree = open_tree(tree_path);
      plumbtop_tree* reduced = nullptr;
      char* trace = nullptr;
      if (plumbtop_tree_reduce(h.tree, depth, &reduced, &trace, &err) != PLUMBTOP_OK)
        fail("reduce", err);
      if (plumbtop_tree_to_json(reduced, &out, &err) != PLUMBTOP_OK) fail("reduce", err);
      write_output(take(out), out_path);
      std::cerr << take(trace) << "\n";
      plumbtop_tree_free(reduced);
      return 0;
    }
    if (tree_move->parsed()) {
      h.tree = open_tree(tree_path);
      plumbtop_tree* moved = nullptr;
      if (plumbtop_tree_move(h.tree, move_json.c_str(), &moved, &err) != PLUMBTOP_OK)
        fail("move", err);
      if (plumbtop_tree_to_json(moved, &out, &err) != PLUMBTOP_OK) fail("move", err);
      write_output(take(out), out_path);
      plumbtop_tree_free(moved);
      return 0;
    }
    if (spinc_list->parsed()) {
      h.lat = open_lattice(lattice_kind);
      h.tree = open_tree(tree_path);
      if (plumbtop_spinc_list(h.tree, h.lat, &out, &err) != PLUMBTOP_OK) fail("spinc", err);
      write_output(take(out), "");
      return 0;
    }
    if (puzzle_verify->parsed()) {
      h.lat = open_lattice(lattice_kind);
      std::string rep;
      if (!window_path.empty()) {
        std::string body = read_file(window_path);
        if (plumbtop_puzzle_verify_window(h.lat, body.c_str(), &out, &err) != PLUMBTOP_OK)
          fail("puzzle", err);
        rep = take(out);
      } else {
        h.series = open_series(h.lat, series_spec);
        if (plumbtop_puzzle_verify(h.series, radius.c_str(), &out, &err) != PLUMBTOP_OK)
          fail("puzzle", err);
        rep = take(out);
      }
      write_output(rep, "");
      return report_exit(rep, "ok");
    }
    if (puzzle_solve->parsed()) {
      h.lat = open_lattice("A1");
      if (plumbtop_puzzle_solve_a1(h.lat, side.c_str(), radius.c_str(), &out, &err) != PLUMBTOP_OK)
        fail("puzzle", err);
      std::string rep = take(out);
      write_output(rep, "");
      return report_exit(rep, "unique");
    }
    if (puzzle_family->parsed()) {
      h.lat = open_lattice(lattice_kind);
      std::string spec = "translate:" + std::to_string(simple_root) + ":" + gamma_csv;
      h.series = open_series(h.lat, spec);
      if (plumbtop_series_to_json(h.series, &out, &err) != PLUMBTOP_OK) fail("family", err);
      write_output(take(out), out_path);
      return 0;
    }
    if (y_cmd->parsed()) {
      h.lat = open_lattice(lattice_kind);
      h.tree = open_tree(tree_path);
      h.series = open_series(h.lat, series_spec);
      if (plumbtop_y_series(h.tree, h.lat, h.series, spinc_index, trunc.c_str(), g_threads, &out,
                            &err) != PLUMBTOP_OK)
        fail("y-series", err);
      std::string rep = take(out);
      write_output(rep, out_path);
      return report_exit(rep, "ring_check_ok");
    }
    if (verify_move->parsed() || verify_weyl->parsed() || verify_twist->parsed()) {
      h.lat = open_lattice(lattice_kind);
      h.tree = open_tree(tree_path);
      h.series = open_series(h.lat, series_spec);
      int rc;
      if (verify_move->parsed())
        rc = plumbtop_verify_move(h.tree, h.lat, h.series, move_json.c_str(), spinc_index,
                                  trunc.c_str(), g_threads, &out, &err);
      else if (verify_weyl->parsed())
        rc = plumbtop_verify_weyl(h.tree, h.lat, h.series, spinc_index, weyl_index, trunc.c_str(),
                                  g_threads, &out, &err);
      else
        rc = plumbtop_verify_twist(h.tree, h.lat, h.series, spinc_index, weyl_index, trunc.c_str(),
                                   g_threads, &out, &err);
      if (rc != PLUMBTOP_OK) fail("verify", err);
      std::string rep = take(out);
      write_output(rep, "");
      return report_exit(rep, "equal");
    }
    if (brieskorn_cmd->parsed()) {
      h.lat = open_lattice(lattice_kind);
      h.series = open_series(h.lat, series_spec);
      if (plumbtop_brieskorn(bvals[0], bvals[1], bvals[2], h.lat, h.series, trunc.c_str(),
                             via.c_str(), g_threads, &out, &err) != PLUMBTOP_OK)
        fail("brieskorn", err);
      std::string rep = take(out);
      write_output(rep, out_path);
      if (via == "both") return report_exit(rep, "paths_equal");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
