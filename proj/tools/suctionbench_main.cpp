#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "suctionbench/commands.hpp"
#include "suctionbench/config.hpp"
#include "suctionbench/errors.hpp"

namespace {

suctionbench::ToolkitConfig resolve_config(const std::string& config_path,
                                           const std::string& output_dir) {
  suctionbench::ToolkitConfig config = config_path.empty()
                                           ? suctionbench::default_config()
                                           : suctionbench::load_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"suctionbench: analytic suction-grasp annotation and evaluation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  app.add_option("-c,--config", config_path, "toolkit configuration file (JSON)");
  app.add_option("-o,--output-dir", output_dir, "override the configured output directory");

  // config init
  auto* config_cmd = app.add_subcommand("config", "configuration utilities");
  auto* config_init = config_cmd->add_subcommand("init", "write the default configuration");
  std::string config_out = "suctionbench.config.json";
  config_init->add_option("path", config_out, "destination file");

  // annotate-object
  auto* annotate_object =
      app.add_subcommand("annotate-object", "sample and seal-score one object's candidates");
  std::string ao_mesh, ao_id;
  annotate_object->add_option("--mesh", ao_mesh, "triangle mesh file")->required();
  annotate_object->add_option("--id", ao_id, "object id for the output file")->required();

  // annotate-scene
  auto* annotate_scene =
      app.add_subcommand("annotate-scene", "compose per-object annotations into a scene");
  std::string as_scene, as_annotations;
  annotate_scene->add_option("--scene", as_scene, "scene configuration (JSON)")->required();
  annotate_scene->add_option("--annotations", as_annotations,
                             "directory holding <id>.annotation.txt files "
                             "(default: output dir)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score prediction files against scenes");
  std::vector<std::string> ev_scenes, ev_preds;
  std::string ev_stem = "report";
  evaluate->add_option("--scene", ev_scenes, "scene configuration(s)")->required();
  evaluate->add_option("--pred", ev_preds, "prediction file per scene")->required();
  evaluate->add_option("--report", ev_stem, "report file stem (default: report)");

  // baseline-normal-std
  auto* baseline = app.add_subcommand("baseline-normal-std",
                                      "normal-deviation heuristic predictor");
  std::string bl_scene;
  int bl_camera = 0;
  baseline->add_option("--scene", bl_scene, "scene configuration")->required();
  baseline->add_option("--camera", bl_camera, "camera index (default 0)");

  // sample-from-heatmap
  auto* sample = app.add_subcommand("sample-from-heatmap",
                                    "turn an external heatmap into predictions");
  std::string sm_scene, sm_heatmap;
  int sm_camera = 0;
  sample->add_option("--scene", sm_scene, "scene configuration")->required();
  sample->add_option("--heatmap", sm_heatmap, "heatmap grid file")->required();
  sample->add_option("--camera", sm_camera, "camera index (default 0)");

  // render-labels
  auto* labels = app.add_subcommand("render-labels", "rasterize label heatmaps for a camera");
  std::string rl_scene, rl_annotation;
  int rl_camera = 0;
  double rl_sigma = -1.0;
  labels->add_option("--scene", rl_scene, "scene configuration")->required();
  labels->add_option("--camera", rl_camera, "camera index (default 0)");
  labels->add_option("--sigma", rl_sigma, "Gaussian splat sigma in pixels (default from config)");
  labels->add_option("--annotation", rl_annotation,
                     "existing scene annotation file (default: annotate in-memory)");

  // render-depth
  auto* render = app.add_subcommand("render-depth", "render a camera's depth image");
  std::string rd_scene;
  int rd_camera = 0;
  bool rd_pgm = false;
  render->add_option("--scene", rd_scene, "scene configuration")->required();
  render->add_option("--camera", rd_camera, "camera index (default 0)");
  render->add_flag("--pgm16", rd_pgm, "write 16-bit millimeter PGM instead of the float grid");

  CLI11_PARSE(app, argc, argv);

  try {
    if (config_init->parsed()) {
      suctionbench::save_config(config_out, suctionbench::default_config());
      std::cout << config_out << "\n";
      return 0;
    }
    const suctionbench::ToolkitConfig config = resolve_config(config_path, output_dir);

    if (annotate_object->parsed()) {
      std::cout << suctionbench::cmd_annotate_object(ao_mesh, ao_id, config) << "\n";
    } else if (annotate_scene->parsed()) {
      std::cout << suctionbench::cmd_annotate_scene(as_scene, config, as_annotations) << "\n";
    } else if (evaluate->parsed()) {
      const auto report = suctionbench::cmd_evaluate(ev_scenes, ev_preds, config, ev_stem);
      std::printf("aggregate AP %.4f  AP-top1 %.4f over %zu scene(s)\n", report.aggregate.ap,
                  report.aggregate.ap_top1, report.scenes.size());
    } else if (baseline->parsed()) {
      std::cout << suctionbench::cmd_baseline_normal_std(bl_scene, bl_camera, config) << "\n";
    } else if (sample->parsed()) {
      std::cout << suctionbench::cmd_sample_from_heatmap(sm_scene, sm_camera, sm_heatmap, config)
                << "\n";
    } else if (labels->parsed()) {
      const double sigma = rl_sigma >= 0.0 ? rl_sigma : config.label_sigma_px;
      for (const auto& path :
           suctionbench::cmd_render_labels(rl_scene, rl_camera, sigma, config, rl_annotation)) {
        std::cout << path << "\n";
      }
    } else if (render->parsed()) {
      std::cout << suctionbench::cmd_render_depth(rd_scene, rd_camera, config, rd_pgm) << "\n";
    }
  } catch (const suctionbench::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
