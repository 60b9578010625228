// net.hpp -- compiling templates into extended Petri nets (ordinary + transfer transitions)
#pragma once

#include <string>
#include <vector>

#include "crowdcov/semantics.hpp"
#include "crowdcov/template.hpp"
#include "crowdcov/vec.hpp"

namespace crowdcov {

struct OrdinaryTransition {
    SparseVec pre, post;
    enum class Tag { Tau, Pair, WriteCopy, ReadOp, LockOp, UnlockOp };
    Tag tag = Tag::Tau;
    TransId t1 = kNoId;       // template transition (the sender for Pair)
    TransId t2 = kNoId;       // Pair: the receive transition
    ValueId current = kNoId;  // WriteCopy: store value consumed by this copy
};

struct BroadcastTransition {
    PlaceId sender_pre = 0;
    PlaceId sender_post = 0;
    std::vector<std::pair<PlaceId, PlaceId>> transfer;  // sorted, deduplicated
    std::vector<TransId> edge_trans;  // per transfer edge: a realizing receive transition
    TransId t1 = kNoId;               // the send transition
};

/// Common coverability instance all templates compile into. Places are the
/// template states, then one val_* place per value (store semantics), then a
/// lockfree place (lock semantics).
struct ExtendedNet {
    std::vector<std::string> places;
    std::size_t num_state_places = 0;
    std::size_t num_val_places = 0;
    PlaceId val_base = 0;       // first val place
    PlaceId lockfree = kNoId;   // kNoId when absent
    std::vector<bool> held;     // per state place: may hold the lock
    std::vector<OrdinaryTransition> ordinary;
    std::vector<BroadcastTransition> broadcasts;
    GenConfig init;
    SparseVec target;

    std::size_t num_places() const { return places.size(); }
};

/// Compiles a valid template. The net's step semantics bisimulates the
/// counting semantics: tokens at state places are process counts, val and
/// lockfree tokens carry the store and lock component.
ExtendedNet compile(const TemplateAutomaton& t);

bool ordinary_enabled(const ExtendedNet& net, const GenConfig& m, TransId t);
GenConfig fire_ordinary(const ExtendedNet& net, const GenConfig& m, TransId t);

bool ordinary_enabled(const ExtendedNet& net, const std::vector<Count>& m, TransId t);
std::vector<Count> fire_ordinary(const ExtendedNet& net, const std::vector<Count>& m, TransId t);

/// Fires broadcast b on a finite marking. routing holds one token count per
/// transfer edge and must route every non-sender token of the transfer
/// domain. Throws std::invalid_argument otherwise.
std::vector<Count> fire_broadcast(const ExtendedNet& net, const std::vector<Count>& m,
                                  std::uint32_t b, const std::vector<Count>& routing);

/// All one-step successors of a finite marking (every transition, every
/// broadcast routing), deduplicated, in canonical order.
std::vector<std::vector<Count>> net_successors(const ExtendedNet& net,
                                               const std::vector<Count>& m);

/// Marking corresponding to a configuration (bisimulation direction).
std::vector<Count> config_to_marking(const ExtendedNet& net, const Config& c);

/// Text dump: places, init, target, then one line per transition.
std::string dump_net(const ExtendedNet& net);

}  // namespace crowdcov
