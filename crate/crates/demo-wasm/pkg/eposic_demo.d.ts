/* tslint:disable */
/* eslint-disable */

/**
 * Choi matrix of `Φ_{m,n,h}` on `P_m ⊗ conj(P_r)`.
 */
export function choi_matrix(m: number, n: number, h: number): string;

/**
 * Nonzero coefficients `ε_i^j` of `α_{m,n,h}`.
 */
export function epsilon_table(m: number, n: number, h: number): string;

/**
 * Verdict for `Φ_{m,m+1,m} − α Φ_{m,m−1,m−1}`; `alpha` is `"P/Q"`.
 */
export function positivity(m: number, alpha: string): string;

/**
 * `steps + 1` equally spaced rational α in `[0, 2/(m+2)]`, for plotting.
 */
export function positivity_curve(m: number, steps: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly choi_matrix: (a: number, b: number, c: number) => [number, number];
    readonly epsilon_table: (a: number, b: number, c: number) => [number, number];
    readonly positivity: (a: number, b: number, c: number) => [number, number];
    readonly positivity_curve: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
