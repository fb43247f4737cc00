/* tslint:disable */
/* eslint-disable */

/**
 * All three views of a synthetic recording, flattened row-major.
 */
export class Views {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly channels: number;
    /**
     * `C x C` mutual information; the diagonal holds single-channel entropies.
     */
    readonly mi: Float64Array;
    /**
     * `C x C x C` O-information tensor.
     */
    readonly oinfo: Float64Array;
    readonly pearson: Float64Array;
}

export function connectivity_views(channels: number, timepoints: number, coupling: number, sigma: number, alpha: number, seed: number): Views;

export function entropy_curve(timepoints: number, sigma_min: number, sigma_max: number, steps: number, alpha: number, seed: number): Float64Array;

export function triplet_explorer(coupling: number, synergy: number, timepoints: number, sigma: number, alpha: number, seed: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_views_free: (a: number, b: number) => void;
    readonly connectivity_views: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly entropy_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly triplet_explorer: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly views_channels: (a: number) => number;
    readonly views_mi: (a: number) => [number, number];
    readonly views_oinfo: (a: number) => [number, number];
    readonly views_pearson: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
