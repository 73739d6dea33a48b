#pragma once

// Shared enums and error machinery for the follab library.

#include <optional>
#include <stdexcept>
#include <string>

namespace follab {

enum class VertexKind { Min, Max, SaddleUp, SaddleDown };
enum class Port { Cap, PairA, PairB, Join };

// Attachment side of a port: Above means an edge leaves this vertex upward
// (the vertex is the lower endpoint), Below the mirror.
enum class Side { Below, Above };

// Behaviour of the knot strand at a marked point, seen from the cap side of
// the nearby outermost disk.
enum class Germ { MonotoneThrough, EndpointExtremumOnCapSide };

inline bool is_saddle(VertexKind k) {
    return k == VertexKind::SaddleUp || k == VertexKind::SaddleDown;
}

inline bool is_extremum(VertexKind k) { return !is_saddle(k); }

inline bool is_pair_port(Port p) { return p == Port::PairA || p == Port::PairB; }

// Side of `port` on a vertex of kind `kind`; nullopt if the vertex has no
// such port (extrema expose only Cap, saddles only PairA/PairB/Join).
inline std::optional<Side> port_side(VertexKind kind, Port port) {
    switch (kind) {
    case VertexKind::Min:
        return port == Port::Cap ? std::optional(Side::Above) : std::nullopt;
    case VertexKind::Max:
        return port == Port::Cap ? std::optional(Side::Below) : std::nullopt;
    case VertexKind::SaddleUp:
        if (is_pair_port(port)) return Side::Below;
        if (port == Port::Join) return Side::Above;
        return std::nullopt;
    case VertexKind::SaddleDown:
        if (is_pair_port(port)) return Side::Above;
        if (port == Port::Join) return Side::Below;
        return std::nullopt;
    }
    return std::nullopt;
}

inline const char* kind_name(VertexKind k) {
    switch (k) {
    case VertexKind::Min: return "min";
    case VertexKind::Max: return "max";
    case VertexKind::SaddleUp: return "saddle_up";
    case VertexKind::SaddleDown: return "saddle_down";
    }
    return "?";
}

inline const char* port_name(Port p) {
    switch (p) {
    case Port::Cap: return "cap";
    case Port::PairA: return "pair_a";
    case Port::PairB: return "pair_b";
    case Port::Join: return "join";
    }
    return "?";
}

inline VertexKind flipped_kind(VertexKind k) {
    switch (k) {
    case VertexKind::Min: return VertexKind::Max;
    case VertexKind::Max: return VertexKind::Min;
    case VertexKind::SaddleUp: return VertexKind::SaddleDown;
    case VertexKind::SaddleDown: return VertexKind::SaddleUp;
    }
    return k;
}

enum class Errc {
    InvalidTree,
    InvalidWitness,
    NotASaddle,
    AnnotationRequired,
    InconsistentOrientation,
    WouldCreateUnmarkedOutermostDisk,
    PatternNotFound,
    ReplayMismatch,
    ParseError,
    ResourceCapExceeded,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::InvalidTree: return "InvalidTree";
    case Errc::InvalidWitness: return "InvalidWitness";
    case Errc::NotASaddle: return "NotASaddle";
    case Errc::AnnotationRequired: return "AnnotationRequired";
    case Errc::InconsistentOrientation: return "InconsistentOrientation";
    case Errc::WouldCreateUnmarkedOutermostDisk: return "WouldCreateUnmarkedOutermostDisk";
    case Errc::PatternNotFound: return "PatternNotFound";
    case Errc::ReplayMismatch: return "ReplayMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::ResourceCapExceeded: return "ResourceCapExceeded";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace follab
