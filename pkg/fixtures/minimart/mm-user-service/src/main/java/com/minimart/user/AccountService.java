package com.minimart.user;

import org.springframework.stereotype.Service;
import org.springframework.web.client.RestTemplate;

@Service
public class AccountService {

    private final RestTemplate restTemplate = new RestTemplate();

    public UserDto find(String userId) {
        return new UserDto();
    }

    public UserDto create(UserDto body) {
        return body;
    }

    /* The cart location is configured elsewhere, so the URL is opaque here. */
    public void dropCart(String cartUrl) {
        restTemplate.delete(cartUrl);
    }
}
