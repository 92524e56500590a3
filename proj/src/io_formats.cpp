#include "suctionbench/io_formats.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "suctionbench/errors.hpp"

namespace suctionbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot write file: " + path);
  return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open file: " + path);
  return in;
}

void write_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::ifstream& in, const std::string& path) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
    throw IoError("truncated grid file: " + path);
  }
  return v;
}

void write_float_grid(const std::string& path, int width, int height,
                      const std::vector<float>& data) {
  auto out = open_out(path, std::ios::binary);
  write_u32(out, static_cast<std::uint32_t>(width));
  write_u32(out, static_cast<std::uint32_t>(height));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!out) throw IoError("failed writing grid file: " + path);
}

void read_float_grid(const std::string& path, int& width, int& height,
                     std::vector<float>& data) {
  auto in = open_in(path, std::ios::binary);
  width = static_cast<int>(read_u32(in, path));
  height = static_cast<int>(read_u32(in, path));
  if (width <= 0 || height <= 0 || static_cast<long long>(width) * height > (1LL << 28)) {
    throw IoError("implausible grid dimensions in " + path);
  }
  data.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  if (!in.read(reinterpret_cast<char*>(data.data()),
               static_cast<std::streamsize>(data.size() * sizeof(float)))) {
    throw IoError("truncated grid file: " + path);
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void write_depth(const std::string& path, const DepthImage& depth) {
  write_float_grid(path, depth.width, depth.height, depth.data);
}

DepthImage read_depth(const std::string& path) {
  DepthImage depth;
  read_float_grid(path, depth.width, depth.height, depth.data);
  for (float v : depth.data) {
    if (!(v >= 0.0f) || !std::isfinite(v)) throw IoError("negative or non-finite depth in " + path);
  }
  return depth;
}

void write_heatmap(const std::string& path, const Heatmap& map) {
  Heatmap clamped = map;
  clamped.clamp();
  write_float_grid(path, clamped.width, clamped.height, clamped.data);
}

Heatmap read_heatmap(const std::string& path) {
  Heatmap map;
  read_float_grid(path, map.width, map.height, map.data);
  map.clamp();
  return map;
}

void write_depth_pgm16(const std::string& path, const DepthImage& depth) {
  auto out = open_out(path, std::ios::binary);
  out << "P5\n" << depth.width << " " << depth.height << "\n65535\n";
  for (float v : depth.data) {
    const long mm = std::lround(static_cast<double>(v) * 1000.0);
    const std::uint16_t q = static_cast<std::uint16_t>(std::min(65535L, std::max(0L, mm)));
    const unsigned char bytes[2] = {static_cast<unsigned char>(q >> 8),
                                    static_cast<unsigned char>(q & 0xff)};  // PGM is big-endian
    out.write(reinterpret_cast<const char*>(bytes), 2);
  }
  if (!out) throw IoError("failed writing PGM file: " + path);
}

DepthImage read_depth_pgm16(const std::string& path) {
  auto in = open_in(path, std::ios::binary);
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (magic != "P5" || maxval != 65535 || width <= 0 || height <= 0) {
    throw IoError("not a 16-bit binary PGM: " + path);
  }
  in.get();  // single whitespace after the header
  DepthImage depth = DepthImage::zeros(width, height);
  for (auto& v : depth.data) {
    unsigned char bytes[2];
    if (!in.read(reinterpret_cast<char*>(bytes), 2)) throw IoError("truncated PGM: " + path);
    const std::uint16_t q = static_cast<std::uint16_t>((bytes[0] << 8) | bytes[1]);
    v = static_cast<float>(q) / 1000.0f;
  }
  return depth;
}

void write_object_annotation(const std::string& path,
                             const std::vector<ObjectCandidate>& candidates) {
  auto out = open_out(path);
  out << "# suctionbench object-annotation v1\n";
  out << "# columns: x y z ux uy uz s_seal s_deform s_fit\n";
  for (const auto& c : candidates) {
    out << fmt(c.pose.point.x()) << ' ' << fmt(c.pose.point.y()) << ' ' << fmt(c.pose.point.z())
        << ' ' << fmt(c.pose.direction.x()) << ' ' << fmt(c.pose.direction.y()) << ' '
        << fmt(c.pose.direction.z()) << ' ' << fmt(c.s_seal) << ' ' << fmt(c.s_deform) << ' '
        << fmt(c.s_fit) << '\n';
  }
  if (!out) throw IoError("failed writing annotation: " + path);
}

std::vector<ObjectCandidate> read_object_annotation(const std::string& path) {
  auto in = open_in(path);
  std::vector<ObjectCandidate> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ObjectCandidate c;
    if (!(ss >> c.pose.point.x() >> c.pose.point.y() >> c.pose.point.z() >>
          c.pose.direction.x() >> c.pose.direction.y() >> c.pose.direction.z() >> c.s_seal >>
          c.s_deform >> c.s_fit)) {
      throw ParseError(path, line_no, "malformed annotation row");
    }
    out.push_back(c);
  }
  return out;
}

void write_scene_annotation(const std::string& path, const SceneAnnotation& annotation) {
  auto out = open_out(path);
  out << "# suctionbench scene-annotation v1\n";
  out << "# columns: instance object_id x y z ux uy uz s_seal s_wrench s collision_free\n";
  for (const auto& w : annotation.warnings) out << "# warning: " << w << '\n';
  for (const auto& r : annotation.records) {
    out << r.instance << ' ' << r.object_id << ' ' << fmt(r.point.x()) << ' ' << fmt(r.point.y())
        << ' ' << fmt(r.point.z()) << ' ' << fmt(r.direction.x()) << ' ' << fmt(r.direction.y())
        << ' ' << fmt(r.direction.z()) << ' ' << fmt(r.s_seal) << ' ' << fmt(r.s_wrench) << ' '
        << fmt(r.s) << ' ' << (r.collision_free ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("failed writing scene annotation: " + path);
}

SceneAnnotation read_scene_annotation(const std::string& path) {
  auto in = open_in(path);
  SceneAnnotation annotation;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    AnnotationRecord r;
    int collision_free = 0;
    if (!(ss >> r.instance >> r.object_id >> r.point.x() >> r.point.y() >> r.point.z() >>
          r.direction.x() >> r.direction.y() >> r.direction.z() >> r.s_seal >> r.s_wrench >>
          r.s >> collision_free)) {
      throw ParseError(path, line_no, "malformed scene annotation row");
    }
    r.collision_free = collision_free != 0;
    annotation.records.push_back(std::move(r));
  }
  return annotation;
}

void write_predictions(const std::string& path, const PredictionFile& file) {
  auto out = open_out(path);
  out << "# suctionbench predictions v1\n";
  if (file.world_frame) {
    out << "frame world\n";
  } else {
    out << "frame camera " << file.camera_index << '\n';
  }
  out << "# columns: x y z ux uy uz confidence\n";
  for (const auto& p : file.predictions) {
    out << fmt(p.pose.point.x()) << ' ' << fmt(p.pose.point.y()) << ' ' << fmt(p.pose.point.z())
        << ' ' << fmt(p.pose.direction.x()) << ' ' << fmt(p.pose.direction.y()) << ' '
        << fmt(p.pose.direction.z()) << ' ' << fmt(p.confidence) << '\n';
  }
  if (!out) throw IoError("failed writing predictions: " + path);
}

PredictionFile read_predictions(const std::string& path) {
  auto in = open_in(path);
  PredictionFile file;
  bool frame_seen = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    if (!frame_seen) {
      std::string tag, frame;
      if (!(ss >> tag >> frame) || tag != "frame") {
        throw ParseError(path, line_no, "expected 'frame world' or 'frame camera <index>'");
      }
      if (frame == "world") {
        file.world_frame = true;
      } else if (frame == "camera") {
        file.world_frame = false;
        if (!(ss >> file.camera_index) || file.camera_index < 0) {
          throw ParseError(path, line_no, "bad camera index");
        }
      } else {
        throw ParseError(path, line_no, "unknown frame '" + frame + "'");
      }
      frame_seen = true;
      continue;
    }
    Prediction p;
    if (!(ss >> p.pose.point.x() >> p.pose.point.y() >> p.pose.point.z() >>
          p.pose.direction.x() >> p.pose.direction.y() >> p.pose.direction.z() >>
          p.confidence)) {
      throw ParseError(path, line_no, "malformed prediction row");
    }
    if (!std::isfinite(p.confidence)) throw ParseError(path, line_no, "non-finite confidence");
    const double norm = p.pose.direction.norm();
    if (!(norm > 1e-9)) throw ParseError(path, line_no, "zero direction");
    p.pose.direction /= norm;
    file.predictions.push_back(p);
  }
  if (!frame_seen && !file.predictions.empty()) {
    throw ParseError(path, 1, "prediction file lacks a frame declaration");
  }
  return file;
}

namespace {

std::array<double, 12> pose_from_json(const json& j) {
  if (!j.is_array() || j.size() != 12) throw Error("pose must hold 12 row-major numbers");
  std::array<double, 12> rows{};
  for (std::size_t i = 0; i < 12; ++i) rows[i] = j[i].get<double>();
  return rows;
}

json pose_to_json(const RigidTransform& t) {
  const auto rows = t.to_rows();
  return json(rows);
}

}  // namespace

Scene read_scene_config(const std::string& path) {
  auto in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path, 0, std::string("invalid JSON: ") + e.what());
  }

  Scene scene;
  try {
    const fs::path base = fs::path(path).parent_path();
    for (const auto& [id, mesh_path] : j.at("meshes").items()) {
      fs::path p = mesh_path.get<std::string>();
      if (p.is_relative()) p = base / p;
      scene.mesh_registry[id] = p.string();
    }
    for (const auto& inst : j.at("instances")) {
      ObjectInstance instance;
      instance.object_id = inst.at("object").get<std::string>();
      instance.pose = RigidTransform::from_rows(pose_from_json(inst.at("pose")));
      if (!instance.pose.is_valid(1e-6)) {
        throw Error("instance pose for '" + instance.object_id + "' is not rigid");
      }
      scene.instances.push_back(std::move(instance));
    }
    const auto& intr = j.at("intrinsics");
    scene.intrinsics.fx = intr.at("fx").get<double>();
    scene.intrinsics.fy = intr.at("fy").get<double>();
    scene.intrinsics.cx = intr.at("cx").get<double>();
    scene.intrinsics.cy = intr.at("cy").get<double>();
    scene.intrinsics.width = intr.at("width").get<int>();
    scene.intrinsics.height = intr.at("height").get<int>();
    scene.intrinsics.validate();
    for (const auto& cam : j.at("camera_poses")) {
      const RigidTransform pose = RigidTransform::from_rows(pose_from_json(cam));
      if (!pose.is_valid(1e-6)) throw Error("camera pose is not rigid");
      scene.camera_poses.push_back(pose);
    }
    const auto& g = j.at("gravity");
    scene.gravity_direction = Vec3(g.at(0).get<double>(), g.at(1).get<double>(),
                                   g.at(2).get<double>());
    if (scene.gravity_direction.norm() < 1e-9) throw Error("gravity vector is zero");
    scene.gravity_direction.normalize();
  } catch (const json::exception& e) {
    throw ParseError(path, 0, std::string("bad scene config: ") + e.what());
  }
  return scene;
}

void write_scene_config(const std::string& path, const Scene& scene) {
  json j;
  j["meshes"] = json::object();
  for (const auto& [id, mesh_path] : scene.mesh_registry) j["meshes"][id] = mesh_path;
  j["instances"] = json::array();
  for (const auto& inst : scene.instances) {
    j["instances"].push_back({{"object", inst.object_id}, {"pose", pose_to_json(inst.pose)}});
  }
  j["intrinsics"] = {{"fx", scene.intrinsics.fx}, {"fy", scene.intrinsics.fy},
                     {"cx", scene.intrinsics.cx}, {"cy", scene.intrinsics.cy},
                     {"width", scene.intrinsics.width}, {"height", scene.intrinsics.height}};
  j["camera_poses"] = json::array();
  for (const auto& cam : scene.camera_poses) j["camera_poses"].push_back(pose_to_json(cam));
  j["gravity"] = {scene.gravity_direction.x(), scene.gravity_direction.y(),
                  scene.gravity_direction.z()};
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing scene config: " + path);
}

namespace {

json metrics_to_json(const SceneMetrics& m, const EvalConfig& config) {
  json j;
  j["failed"] = m.failed;
  if (m.failed) {
    j["error"] = m.error;
  }
  json ap_s = json::object();
  json ap_s_top1 = json::object();
  for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
    const std::string key = fmt(config.thresholds[i]);
    ap_s[key] = i < m.ap_s.size() ? m.ap_s[i] : 0.0;
    ap_s_top1[key] = i < m.ap_s_top1.size() ? m.ap_s_top1[i] : 0.0;
  }
  j["ap_s"] = ap_s;
  j["ap"] = m.ap;
  j["ap_s_top1"] = ap_s_top1;
  j["ap_top1"] = m.ap_top1;
  j["evaluated"] = m.evaluated;
  j["suppressed"] = m.suppressed;
  j["unassociated"] = m.unassociated;
  return j;
}

}  // namespace

void write_report_json(const std::string& path, const EvalReport& report,
                       const EvalConfig& config) {
  json j;
  j["thresholds"] = config.thresholds;
  j["top_k"] = config.top_k;
  j["per_object_cap"] = config.per_object_cap;
  j["scenes"] = json::array();
  for (const auto& [name, metrics] : report.scenes) {
    json entry = metrics_to_json(metrics, config);
    entry["scene"] = name;
    j["scenes"].push_back(entry);
  }
  j["aggregate"] = metrics_to_json(report.aggregate, config);
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing report: " + path);
}

void write_report_csv(const std::string& path, const EvalReport& report,
                      const EvalConfig& config) {
  auto out = open_out(path);
  out << "scene,ap,ap_top1";
  for (double s : config.thresholds) out << ",ap_" << fmt(s) << ",ap_top1_" << fmt(s);
  out << ",evaluated,suppressed,unassociated,failed\n";
  auto row = [&](const std::string& name, const SceneMetrics& m) {
    out << name << ',' << fmt(m.ap) << ',' << fmt(m.ap_top1);
    for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
      out << ',' << fmt(i < m.ap_s.size() ? m.ap_s[i] : 0.0) << ','
          << fmt(i < m.ap_s_top1.size() ? m.ap_s_top1[i] : 0.0);
    }
    out << ',' << m.evaluated << ',' << m.suppressed << ',' << m.unassociated << ','
        << (m.failed ? 1 : 0) << '\n';
  };
  for (const auto& [name, metrics] : report.scenes) row(name, metrics);
  row("aggregate", report.aggregate);
  if (!out) throw IoError("failed writing report CSV: " + path);
}

}  // namespace suctionbench
