/* tslint:disable */
/* eslint-disable */

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    bestSweep(eps_percent: number, shuffles: number): string;
    colors(): Uint32Array;
    constructor(n: number, clusters: number, noise: number, seed: number);
    metric(): Float64Array;
    planted(): Uint32Array;
    round(eps_percent: number, rho: number, sigma: number, seed: number): string;
    signs(): Uint8Array;
    solveLp(): string;
    readonly n: number;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_bestSweep: (a: number, b: number, c: number) => [number, number, number, number];
    readonly demo_colors: (a: number) => [number, number];
    readonly demo_js_new: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly demo_metric: (a: number) => [number, number];
    readonly demo_n: (a: number) => number;
    readonly demo_planted: (a: number) => [number, number];
    readonly demo_round: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly demo_signs: (a: number) => [number, number];
    readonly demo_solveLp: (a: number) => [number, number, number, number];
    readonly __externref_table_alloc: () => number;
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
