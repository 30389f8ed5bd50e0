/* tslint:disable */
/* eslint-disable */

/**
 * `beta(n, m, tau)` for a type such as `"t+2;t+1"`, with the parabolic block sizes.
 */
export function beta_type(tau: string, n: number, m: number): string;

/**
 * Stratum of a configuration such as `"0,0,1,inf"`, its binary form and,
 * for each admissible number `i` of points at infinity, the Y/Z and
 * total-stability verdicts.
 */
export function classify_configuration(points: string): string;

/**
 * Index set of `Sym^n(P^1)` with the number of coincident points behind each entry.
 */
export function sym_index_set(n: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly beta_type: (a: number, b: number, c: number, d: number) => [number, number];
    readonly classify_configuration: (a: number, b: number) => [number, number];
    readonly sym_index_set: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
