#ifndef NETGAP_H
#define NETGAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum NetgapStatus {
  NETGAP_STATUS_OK = 0,
  /**
   * The question was decided and the answer is no (no solution, not
   * accepted). Out-parameters are still written where documented.
   */
  NETGAP_STATUS_NEGATIVE = 1,
  /**
   * A search ran out of budget before deciding.
   */
  NETGAP_STATUS_BUDGET = 2,
  NETGAP_STATUS_NULL_POINTER = 3,
  NETGAP_STATUS_INVALID_ARGUMENT = 4,
  NETGAP_STATUS_INVALID_NETWORK = 5,
  NETGAP_STATUS_LIMIT_EXCEEDED = 6,
  NETGAP_STATUS_PARSE = 7,
  NETGAP_STATUS_INTERNAL = 8,
} NetgapStatus;

/**
 * Opaque linear network code.
 */
typedef struct NetgapCode NetgapCode;

/**
 * Opaque multicast network.
 */
typedef struct NetgapNetwork NetgapNetwork;

/**
 * Exact values or brackets from [`netgap_gap`]. An upper value of 0
 * means no upper bound was found.
 */
typedef struct NetgapGap {
  uint64_t qs_lower;
  uint64_t qs_upper;
  uint64_t qv_lower;
  uint64_t qv_upper;
  uint64_t gap_lower;
  uint64_t gap_upper;
  bool exact;
} NetgapGap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *netgap_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void netgap_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum NetgapStatus netgap_network_butterfly(struct NetgapNetwork **out);

/**
 * The combination network `N_{h,r,s}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NetgapStatus netgap_network_combination(uint32_t h,
                                             uint32_t r,
                                             uint32_t s,
                                             struct NetgapNetwork **out);

/**
 * The Kneser network `K_{q,t;h}` with every terminal listed.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NetgapStatus netgap_network_kneser(uint64_t q,
                                        uint32_t t,
                                        uint32_t h,
                                        struct NetgapNetwork **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NetgapStatus netgap_network_from_json(const char *json, struct NetgapNetwork **out);

/**
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NetgapStatus netgap_network_to_json(const struct NetgapNetwork *net, char **out);

/**
 * # Safety
 * `net` must be null or a handle not yet freed.
 */
void netgap_network_free(struct NetgapNetwork *net);

/**
 * Node, edge and terminal counts and the number of messages.
 *
 * # Safety
 * `net` must be a live handle; out pointers may be null to skip them.
 */
enum NetgapStatus netgap_network_shape(const struct NetgapNetwork *net,
                                       uint64_t *nodes,
                                       uint64_t *edges,
                                       uint64_t *terminals,
                                       uint32_t *h);

/**
 * Source-to-`terminal` min-cut.
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NetgapStatus netgap_min_cut(const struct NetgapNetwork *net, uint32_t terminal, uint64_t *out);

/**
 * Writes whether the network is minimal. Returns `Negative` when it is
 * not (including unsolvable networks).
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NetgapStatus netgap_is_minimal(const struct NetgapNetwork *net, bool *out);

/**
 * Parses a code in the JSON form written by the command line tool.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NetgapStatus netgap_code_from_json(const char *json, struct NetgapCode **out);

/**
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum NetgapStatus netgap_code_to_json(const struct NetgapCode *code, char **out);

/**
 * # Safety
 * `code` must be null or a handle not yet freed.
 */
void netgap_code_free(struct NetgapCode *code);

/**
 * `Ok` when `code` solves `net`, `Negative` when it does not.
 *
 * # Safety
 * Both handles must be live.
 */
enum NetgapStatus netgap_verify(const struct NetgapNetwork *net, const struct NetgapCode *code);

/**
 * Searches for a `(q, t)` linear solution. On `Ok` a code handle is
 * written to `out`; `Negative` means none exists, `Budget` undecided.
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NetgapStatus netgap_search_solution(const struct NetgapNetwork *net,
                                         uint64_t q,
                                         uint32_t t,
                                         uint64_t budget,
                                         struct NetgapCode **out);

/**
 * Smallest prime power at least `n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NetgapStatus netgap_psi(uint64_t n, uint64_t *out);

/**
 * Chromatic number of `qK_{n:m}`. Writes the bracket; `Budget` when the
 * bounds did not meet.
 *
 * # Safety
 * `lower` and `upper` must be valid pointers.
 */
enum NetgapStatus netgap_chi_qkneser(uint64_t q,
                                     uint32_t n,
                                     uint32_t m,
                                     uint64_t budget,
                                     uint64_t *lower,
                                     uint64_t *upper);

/**
 * Computes `q_s`, `q_v` and their gap. `Budget` when any value is only
 * bracketed.
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NetgapStatus netgap_gap(const struct NetgapNetwork *net,
                             uint64_t budget,
                             struct NetgapGap *out);

/**
 * The full gap report, certificates included, as JSON.
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NetgapStatus netgap_gap_json(const struct NetgapNetwork *net, uint64_t budget, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETGAP_H */
