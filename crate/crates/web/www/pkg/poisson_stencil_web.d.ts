/* tslint:disable */
/* eslint-disable */

/**
 * Final level and error of a standing-wave run.
 */
export class Simulation {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Relative L² error over all levels.
     */
    readonly error: number;
    /**
     * `(n+1)²` values of `u^{n_t}`, row-major.
     */
    readonly field: Float64Array;
    readonly n: number;
    readonly unstable: boolean;
}

export function schemeTable(scheme: string): string;

export function simulate(scheme: string, n: number, n_t: number, lambda: number, periodic: boolean): Simulation;

export function stabilityLimit(scheme: string): number;

export function symbolGrid(scheme: string, lambda: number, n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_simulation_free: (a: number, b: number) => void;
    readonly schemeTable: (a: number, b: number) => [number, number, number, number];
    readonly simulate: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly simulation_error: (a: number) => number;
    readonly simulation_field: (a: number) => [number, number];
    readonly simulation_n: (a: number) => number;
    readonly simulation_unstable: (a: number) => number;
    readonly stabilityLimit: (a: number, b: number) => [number, number, number];
    readonly symbolGrid: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
