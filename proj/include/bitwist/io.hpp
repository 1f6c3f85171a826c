#ifndef BITWIST_IO_HPP
#define BITWIST_IO_HPP

#include <string>

#include "json.hpp"

#include "bitwist/pairing.hpp"
#include "bitwist/surgery.hpp"

namespace bitwist {

using Json = nlohmann::ordered_json;

// Interchange format for balls, pairings and multipliers:
//   {"vertices": [...],
//    "edges": [{"id":..., "ends":[tail, head]}, ...],
//    "faces": [{"id":..., "boundary":[{"edge":..., "dir":+1|-1}, ...]}, ...],
//    "pairing": [{"from":..., "to":..., "offset":n}, ...],        (optional)
//    "multipliers": {"edge-or-representative": n, ...}}           (optional)
struct BallInput {
    FacetedBall ball;
    OffsetPairing pairing;
    bool has_pairing = false;
    std::map<std::string, long long> multipliers;
};

BallInput parse_ball_input(const Json& j);
BallInput load_ball_file(const std::string& path);
Json ball_to_json(const FacetedBall& b);
Json ball_input_to_json(const BallInput& in);

// Link interchange:
//   {"components": [{"id":..., "kind":"face"|"edge"|"other", "framing":"p/q"|"inf",
//                    "unknotted":bool, "cycle":...}, ...],
//    "linking": [[...], ...],
//    "meridians": [["K","J"], ...],
//    "blackboard": {"component": n, ...}}                          (optional)
struct LinkInput {
    FramedLink link;
    std::map<std::string, long long> blackboard;
};

LinkInput parse_link_input(const Json& j);
LinkInput load_link_file(const std::string& path);
Json link_to_json(const FramedLink& l);

}  // namespace bitwist

#endif
