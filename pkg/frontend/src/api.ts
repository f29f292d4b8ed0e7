/** Thin typed client for the steering service. */

import type { RegionsInventory, SteerRequest, SteerResponse } from './types.js';

export const DEFAULT_BASE_URL = 'http://127.0.0.1:8077';

/** Error carrying the service's detail message (HTTP-level failures). */
export class ServiceError extends Error {
  readonly status: number;

  constructor(status: number, detail: string) {
    super(detail);
    this.name = 'ServiceError';
    this.status = status;
  }
}

async function detailOf(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.detail === 'string') return body.detail;
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `service responded ${response.status}`;
}

export async function fetchRegions(baseUrl: string): Promise<RegionsInventory> {
  const response = await fetch(`${baseUrl}/regions`);
  if (!response.ok) throw new ServiceError(response.status, await detailOf(response));
  return (await response.json()) as RegionsInventory;
}

export async function steer(
  baseUrl: string,
  request: SteerRequest,
  signal?: AbortSignal,
): Promise<SteerResponse> {
  const response = await fetch(`${baseUrl}/steer`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(request),
    signal,
  });
  if (!response.ok) throw new ServiceError(response.status, await detailOf(response));
  return (await response.json()) as SteerResponse;
}
