#pragma once

#include <optional>
#include <string>

#include "girthwright/canvas.hpp"
#include "girthwright/engine.hpp"
#include "girthwright/wheels.hpp"

namespace girthwright {
namespace io {

// On-disk instance: graph + optional lists, S, A and phi.
struct Instance {
  PlaneGraph g;
  std::optional<ListAssignment> lists;
  BoundarySubgraph s;  // empty path when absent
  std::vector<VertexId> a;
  std::optional<Colouring> phi;
};

Instance load_instance(const std::string& text);
Instance load_instance_file(const std::string& path);
std::string store_instance(const Instance& inst);
void store_instance_file(const Instance& inst, const std::string& path);

Canvas to_canvas(const Instance& inst);  // requires lists
Instance from_canvas(const Canvas& k);

std::string colouring_json(const Colouring& phi);
std::string certificate_json(const ExceptionCertificate& cert);
std::string girth_profile_json(const GirthProfile& profile);

// DOT export: S vertices filled, A vertices drawn as diamonds.
std::string to_dot(const Instance& inst);

}  // namespace io
}  // namespace girthwright
