#pragma once

#include <string>
#include <vector>

#include "tempo/lang.hpp"
#include "tempo/preds.hpp"

namespace tempo {

struct LawResult {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct LemmaSuiteReport {
    std::vector<LawResult> laws;
    bool all_pass() const {
        for (const auto& l : laws)
            if (!l.pass) return false;
        return true;
    }
};

// Exhaustively validates the predicate and algebra laws over the given law
// universe: the separation-logic operator identities, intuitionism carry-over,
// the star/past interplay identity, the separation-algebra laws for states,
// computations and histories, locality of the primitive commands, and the
// history-predicate properties. Computations are checked up to `bound` states.
LemmaSuiteReport run_lemma_suite(Universe& u, int bound, ExecMode mode = global_exec_mode());

std::string to_text(const LemmaSuiteReport& rep);

}  // namespace tempo
