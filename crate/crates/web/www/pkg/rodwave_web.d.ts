/* tslint:disable */
/* eslint-disable */

export class Simulation {
    free(): void;
    [Symbol.dispose](): void;
    energyDensity(): Float64Array;
    invariantDrift(): number;
    minQ(): number;
    /**
     * `kind` is one of `peakon`, `peakon_antipeakon`, `smooth`, `cuspon`, `collision`.
     */
    constructor(kind: string, gamma: number, dxi: number, dt: number, scheme: string);
    step(steps: number): void;
    time(): number;
    totalEnergy(): number;
    us(): Float64Array;
    xs(): Float64Array;
}

export function compareSchemes(kind: string, gamma: number, dxi: number, dt: number, t_final: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_simulation_free: (a: number, b: number) => void;
    readonly compareSchemes: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly simulation_energyDensity: (a: number) => [number, number];
    readonly simulation_invariantDrift: (a: number) => number;
    readonly simulation_minQ: (a: number) => number;
    readonly simulation_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly simulation_step: (a: number, b: number) => [number, number];
    readonly simulation_time: (a: number) => number;
    readonly simulation_totalEnergy: (a: number) => number;
    readonly simulation_us: (a: number) => [number, number];
    readonly simulation_xs: (a: number) => [number, number];
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
