# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive-search kernel.

Exact mirror of ``_search_py.search``: same canonical branch order, same
decision-exact prunes (distinct-owner bound, misroute pairs, equal-card
collapse), same failed-position memoization, same budget semantics.  Given
identical inputs, both kernels return identical decisions, witnesses and
node counts.  Limited to at most 64 cards/players/suits/objectives; the
wrapper falls back to the pure kernel beyond that.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

DEF MAXN = 64
DEF MAXP = 64
DEF MAXL = 64
DEF MAXS = 64

cdef int WIN = 1
cdef int LOSS = 0
cdef int CUT = -1

cdef uint64_t NO_LIMIT = <uint64_t>-1


cdef inline int _pop(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef class _Search:
    cdef int p, n, l, n_suits, trump
    cdef uint64_t full_mask, all_objs, limit, nodes
    cdef int final_depth
    cdef bint has_tokens

    cdef int values[MAXN]
    cdef int suits[MAXN]
    cdef int owners[MAXN]
    cdef int objidx_of[MAXN]
    cdef int pos_in_suit[MAXN]
    cdef uint64_t hand_mask[MAXP]
    cdef uint64_t suit_mask[MAXS]
    cdef int obj_owner[MAXL]
    cdef uint64_t owner_bit[MAXL]
    cdef uint64_t before[MAXL]
    cdef uint64_t after[MAXL]
    cdef int sorted_desc[MAXP][MAXN]
    cdef int sorted_len[MAXP]
    cdef int suit_order[MAXS][MAXN]
    cdef int suit_len[MAXS]
    cdef int trick_cards[MAXN + 1][MAXP]
    cdef int trick_leads[MAXN + 1]
    cdef set failed

    cdef inline int suit_successor(self, int c, uint64_t live) nogil:
        cdef int s = self.suits[c]
        cdef int i, cc
        for i in range(self.pos_in_suit[c] + 1, self.suit_len[s]):
            cc = self.suit_order[s][i]
            if (live >> cc) & 1:
                return cc
        return -1

    cdef inline bint beats(self, int c, int best) nogil:
        if self.suits[c] == self.suits[best]:
            return self.values[c] > self.values[best]
        return self.trump >= 0 and self.suits[c] == self.trump

    cdef bint cycle_in(self, uint64_t s_mask) nogil:
        cdef int indeg[MAXL]
        cdef uint64_t out_edges[MAXL]
        cdef int stack[MAXL]
        cdef uint64_t m, b
        cdef int o, dst, top = 0, seen = 0
        m = s_mask
        while m:
            o = _ctz(m)
            m &= m - 1
            out_edges[o] = 0
            indeg[o] = 0
        m = s_mask
        while m:
            o = _ctz(m)
            m &= m - 1
            b = self.before[o] & s_mask
            while b:
                dst = _ctz(b)
                b &= b - 1
                out_edges[dst] |= (<uint64_t>1) << o
            out_edges[o] |= self.after[o] & s_mask
        m = s_mask
        while m:
            o = _ctz(m)
            m &= m - 1
            b = out_edges[o]
            while b:
                dst = _ctz(b)
                b &= b - 1
                indeg[dst] += 1
        m = s_mask
        while m:
            o = _ctz(m)
            m &= m - 1
            if indeg[o] == 0:
                stack[top] = o
                top += 1
        while top:
            top -= 1
            o = stack[top]
            seen += 1
            b = out_edges[o]
            while b:
                dst = _ctz(b)
                b &= b - 1
                indeg[dst] -= 1
                if indeg[dst] == 0:
                    stack[top] = dst
                    top += 1
        return seen != _pop(s_mask)

    cdef bint token_block(self, uint64_t cb, uint64_t s_mask) nogil:
        cdef uint64_t live = cb | s_mask
        cdef uint64_t m = s_mask, rest
        cdef int o
        while m:
            o = _ctz(m)
            m &= m - 1
            if self.before[o] & ~live & self.all_objs:
                return True
            if self.after[o] & cb:
                return True
        rest = self.all_objs & ~live
        while rest:
            o = _ctz(rest)
            rest &= rest - 1
            if self.after[o] & s_mask:
                return True
        return self.cycle_in(s_mask)

    cdef int resolve(self, uint64_t rem, uint64_t completed, uint64_t trick_mask,
                     int best, int depth):
        cdef int winner = self.owners[best]
        cdef uint64_t new_completed = completed
        cdef uint64_t m = trick_mask
        cdef int c, o, q
        while m:
            c = _ctz(m)
            m &= m - 1
            o = self.objidx_of[c]
            if o >= 0:
                if self.obj_owner[o] != winner:
                    return LOSS
                new_completed |= (<uint64_t>1) << o
        if self.has_tokens and new_completed != completed:
            if self.token_block(completed, new_completed & ~completed):
                return LOSS
        if new_completed == self.all_objs:
            self.final_depth = depth + 1
            return WIN
        for q in range(self.p):
            if not self.hand_mask[q] & rem:
                return LOSS
        return self.boundary(rem, winner, new_completed, depth + 1)

    cdef int seat(self, uint64_t rem, int lead, uint64_t completed, int seat_no,
                  int led_suit, uint64_t trick_mask, int best, int trick_owner,
                  int depth):
        cdef uint64_t cand, follow, bit
        cdef int player, c, o, ow, i, succ
        cdef int new_best, new_led, new_owner, owner_seat, res
        if seat_no == self.p:
            return self.resolve(rem, completed, trick_mask, best, depth)
        player = (lead + seat_no) % self.p
        cand = self.hand_mask[player] & rem
        if seat_no > 0:
            follow = cand & self.suit_mask[led_suit]
            if follow:
                cand = follow
        for i in range(self.sorted_len[player]):
            c = self.sorted_desc[player][i]
            bit = (<uint64_t>1) << c
            if not cand & bit:
                continue
            o = self.objidx_of[c]
            if o < 0:
                succ = self.suit_successor(c, rem | trick_mask)
                if (succ >= 0 and (rem >> succ) & 1
                        and self.owners[succ] == player
                        and self.objidx_of[succ] < 0):
                    continue
                new_owner = trick_owner
            else:
                ow = self.obj_owner[o]
                if trick_owner >= 0 and trick_owner != ow:
                    continue
                new_owner = ow
            self.nodes += 1
            if self.nodes > self.limit:
                return CUT
            if seat_no == 0:
                new_best = c
                new_led = self.suits[c]
            else:
                new_led = led_suit
                new_best = c if self.beats(c, best) else best
            if new_owner >= 0:
                owner_seat = (new_owner - lead) % self.p
                if owner_seat < 0:
                    owner_seat += self.p
                if owner_seat <= seat_no and self.owners[new_best] != new_owner:
                    continue
            self.trick_cards[depth][seat_no] = c
            res = self.seat(rem & ~bit, lead, completed, seat_no + 1, new_led,
                            trick_mask | bit, new_best, new_owner, depth)
            if res != LOSS:
                return res
        return LOSS

    cdef int boundary(self, uint64_t rem, int lead, uint64_t completed, int depth):
        cdef uint64_t owners_mask = 0
        cdef uint64_t m
        cdef int q, res, min_hand, h
        key = (rem, lead, completed)
        if key in self.failed:
            return LOSS
        m = self.all_objs & ~completed
        while m:
            owners_mask |= self.owner_bit[_ctz(m)]
            m &= m - 1
        min_hand = MAXN + 1
        for q in range(self.p):
            h = _pop(self.hand_mask[q] & rem)
            if h < min_hand:
                min_hand = h
        if _pop(owners_mask) > min_hand:
            self.failed.add(key)
            return LOSS
        self.trick_leads[depth] = lead
        res = self.seat(rem, lead, completed, 0, -1, 0, -1, -1, depth)
        if res == LOSS:
            self.failed.add(key)
        return res


def search(p, values, suits, owners, obj_card, obj_owner, before, after,
           trump, first_lead, budget):
    """Compiled twin of ``_search_py.search``; same arguments and returns."""
    cdef _Search s = _Search()
    cdef int n = len(values)
    cdef int l = len(obj_card)
    cdef int i, c, o, q, sp, lead, res, d
    cdef int n_suits = 0

    if n > MAXN or p > MAXP or l > MAXL:
        raise ValueError("instance too large for the compiled kernel")
    for i in range(n):
        if suits[i] + 1 > n_suits:
            n_suits = suits[i] + 1
    if n_suits > MAXS:
        raise ValueError("instance too large for the compiled kernel")

    s.p = p
    s.n = n
    s.l = l
    s.n_suits = n_suits
    s.trump = trump
    s.full_mask = ((<uint64_t>1) << n) - 1 if n < 64 else NO_LIMIT
    s.all_objs = ((<uint64_t>1) << l) - 1 if l < 64 else NO_LIMIT
    s.limit = <uint64_t>budget if 0 < budget < <object>NO_LIMIT else NO_LIMIT
    s.nodes = 0
    s.final_depth = 0
    s.failed = set()

    for q in range(p):
        s.hand_mask[q] = 0
    for i in range(n_suits):
        s.suit_mask[i] = 0
        s.suit_len[i] = 0
    for c in range(n):
        s.values[c] = values[c]
        s.suits[c] = suits[c]
        s.owners[c] = owners[c]
        s.objidx_of[c] = -1
        s.hand_mask[owners[c]] |= (<uint64_t>1) << c
        s.suit_mask[suits[c]] |= (<uint64_t>1) << c
    s.has_tokens = False
    for o in range(l):
        s.objidx_of[obj_card[o]] = o
        s.obj_owner[o] = obj_owner[o]
        s.owner_bit[o] = (<uint64_t>1) << obj_owner[o]
        s.before[o] = <uint64_t>before[o]
        s.after[o] = <uint64_t>after[o]
        if before[o] or after[o]:
            s.has_tokens = True

    for q in range(p):
        order = sorted(
            (c for c in range(n) if owners[c] == q),
            key=lambda c: (values[c], suits[c]),
            reverse=True,
        )
        s.sorted_len[q] = len(order)
        for i in range(len(order)):
            s.sorted_desc[q][i] = order[i]
    for sp in range(n_suits):
        sorder = sorted((c for c in range(n) if suits[c] == sp),
                        key=lambda c: values[c])
        s.suit_len[sp] = len(sorder)
        for i in range(len(sorder)):
            s.suit_order[sp][i] = sorder[i]
            s.pos_in_suit[sorder[i]] = i

    if l == 0:
        return (WIN, [], [], 0)

    leads = [first_lead] if first_lead >= 0 else list(range(p))
    for lead in leads:
        res = s.boundary(s.full_mask, lead, 0, 0)
        if res == WIN:
            return (
                WIN,
                [s.trick_leads[d] for d in range(s.final_depth)],
                [[s.trick_cards[d][i] for i in range(p)] for d in range(s.final_depth)],
                <object>s.nodes,
            )
        if res == CUT:
            return (CUT, [], [], <object>s.nodes)
    return (LOSS, [], [], <object>s.nodes)
