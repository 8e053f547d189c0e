import type { HealthResponse, ModelInfoResponse, PredictResponse } from './types.js';

/** HTTP failure with the status code preserved for the retry banner. */
export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiRequestError';
  }

  get retryable(): boolean {
    return this.status === 503;
  }
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const payload = (await response.json()) as { error?: string };
    if (payload && typeof payload.error === 'string') return payload.error;
  } catch {
    // non-JSON error body; fall through to the generic message
  }
  return `request failed with HTTP ${response.status}`;
}

export async function predict(baseUrl: string, description: string): Promise<PredictResponse> {
  const response = await fetch(`${baseUrl}/api/predict`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ description }),
  });
  if (!response.ok) {
    throw new ApiRequestError(response.status, await errorMessage(response));
  }
  return (await response.json()) as PredictResponse;
}

export async function getHealth(baseUrl: string): Promise<HealthResponse> {
  const response = await fetch(`${baseUrl}/api/health`);
  if (!response.ok) {
    throw new ApiRequestError(response.status, await errorMessage(response));
  }
  return (await response.json()) as HealthResponse;
}

export async function getModelInfo(baseUrl: string): Promise<ModelInfoResponse> {
  const response = await fetch(`${baseUrl}/api/model-info`);
  if (!response.ok) {
    throw new ApiRequestError(response.status, await errorMessage(response));
  }
  return (await response.json()) as ModelInfoResponse;
}
